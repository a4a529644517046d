//! Exact linear algebra over GF(p) or the rationals.

mod elim;
mod field;
mod matrix;

pub use field::{FieldSpec, Scalar, DEFAULT_PRIME};
pub use matrix::{quotient_dim, ExactMatrix};
