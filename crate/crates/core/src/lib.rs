//! Exact linear algebra for multilinear operators on finite-dimensional
//! algebras: the insertion bracket, the two-differential complex built from
//! an associative product, and checks of the structures living on it.

pub mod algebra;
pub mod bicomplex;
pub mod error;
pub mod exactla;
pub mod operators;
pub mod structures;
pub mod words;

pub use algebra::Algebra;
pub use error::Error;
pub use exactla::{Matrix, Scalar, SparseVec};
pub use operators::{MultilinearOp, OpSum};
