//! Exact rational scalars, sparse matrices and rank computations.

mod elim;
mod matrix;
mod scalar;

pub use elim::{cohomology_dim, kernel_basis, rank, solve};
pub use matrix::{add_entry, axpy, Matrix, SparseVec};
pub use scalar::Scalar;
