//! Inputs shared by the benchmarks.

use postulation_core::lifting::{lift_points, PointSet, Scalars};
use postulation_core::monomial_ideal::lex_ideal;
use postulation_core::{OSequence, PrimeField};

/// h-vectors of point sets, from small to the largest plateau used in tests.
pub const H_VECTORS: &[(&str, &[u64])] = &[
    ("d11", &[1, 3, 6, 9, 11, 11, 11]),
    ("d11_tail", &[1, 3, 6, 9, 11, 11, 11, 10, 8, 8, 5, 5, 5, 4, 3, 3, 1]),
    ("d17", &[1, 3, 6, 10, 14, 16, 17, 17, 17, 17]),
];

pub fn h_vector(values: &[u64]) -> OSequence {
    OSequence::finite(values.to_vec())
}

/// Lifted points of the lex ideal with Hilbert function `h`.
pub fn lifted(h: &[u64]) -> PointSet {
    let j = lex_ideal(&OSequence::finite(h.to_vec()), 3).expect("O-sequence");
    lift_points(&j, &Scalars::identity(), PrimeField::default()).expect("Artinian")
}
