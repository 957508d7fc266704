//! Exact arithmetic over ℚ and ℚ(i): matrices, subspaces, and polynomial matrices.

pub mod gaussian;
pub mod matrix;
pub mod poly;
pub mod polymatrix;
pub mod rational;
pub mod subspace;

pub use gaussian::GaussianRational;
pub use matrix::ExactMatrix;
pub use poly::{Poly, RationalFunction};
pub use polymatrix::{nilpotent_exp, poly_det, PolyMatrix};
pub use rational::Rational;
pub use subspace::{kernel, subspace_algebra, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("rows have different lengths")]
    Ragged,
}
