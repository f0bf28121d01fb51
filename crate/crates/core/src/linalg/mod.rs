//! Exact linear algebra over a [`Field`](crate::field::Field).

mod dense;
mod sparse;
mod subspace;

pub use dense::{LinAlgError, Matrix, Rref};
pub use sparse::{sparse_from_dense, sparse_to_dense, SparseEchelon, SparseVec};
pub use subspace::Subspace;
