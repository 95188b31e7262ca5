//! Exact linear algebra over the rationals and prime fields.

mod echelon;
mod matrix;
mod poly;
mod scalar;

pub use echelon::{axpy, to_dense, to_sparse, Echelon, SparseVec};
pub use matrix::{Matrix, Solution};
pub use poly::{minimal_polynomial, rational_roots};
pub use scalar::{Field, Scalar};
