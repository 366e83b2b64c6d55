//! Exact scalar arithmetic and dense matrices.

mod field;
mod matrix;
mod random;

pub use field::{Field, Fp, Scalar};
pub use matrix::Matrix;
pub use random::{sample_scalar, SeededRandomSource};
