//! Exact arithmetic over a prime field: monomials, homogeneous polynomials and
//! dense matrices.

mod field;
mod matrix;
mod poly;

pub use field::{FieldError, PrimeField, DEFAULT_PRIME, SECOND_PRIME};
pub use matrix::{mat_kernel, mat_rank, MatrixFp, Subspace};
pub use poly::{monomials_of_degree, poly_eval, poly_mul, Monomial, Polynomial};
