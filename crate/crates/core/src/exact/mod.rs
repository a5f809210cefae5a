//! Exact arithmetic: prime-field and rational scalars, univariate rational
//! functions over either, and deterministic matrix elimination.

pub mod matrix;
pub mod poly;
pub mod scalar;

pub use matrix::{mat_basis_columns, mat_rank, ExactMatrix};
pub use scalar::{is_prime_u64, next_prime_above, Domain, FieldTag, Scalar};
