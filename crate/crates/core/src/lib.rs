//! Explicit reduced point sets in P3 with equal Hilbert functions and strongly
//! incomparable graded Betti diagrams, together with exact certificates for
//! their Betti numbers and for the Weak Lefschetz Property.
pub mod algebra;
pub mod betti;
pub mod certificate;
pub mod construction;
pub mod lifting;
pub mod monomial_ideal;
pub mod oseq;
mod rng;
pub mod scheme_engine;

pub use algebra::{MatrixFp, Monomial, Polynomial, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
pub use betti::{strongly_incomparable, BettiDiagram, Incomparability};
pub use certificate::Certificate;
pub use construction::{analyze, build_witness_pair, BuildConfig, ConstructionError, WitnessPair};
pub use lifting::{LinesUnion, PointP3, PointSet};
pub use monomial_ideal::MonomialIdeal;
pub use oseq::OSequence;
pub use rng::stream;
