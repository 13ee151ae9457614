//! Dual-backend complex scalars and dense linear algebra.

mod elimination;
mod matrix;
mod orthogonal;
mod pfaffian;
mod scalar;

#[cfg(test)]
mod tests;

pub use elimination::{
    determinant, eigen_multiplicity, inverse, inverse_with, kernel_dimension, nullspace, rank,
    row_reduce, shift, Echelon,
};
pub use matrix::{block_diag, mat_mul, Matrix};
pub use orthogonal::{form_matrix, is_special_orthogonal, j_form, orthogonal_inverse, Form};
pub use pfaffian::{pfaffian, pfaffian_with};
pub use scalar::{
    format_rational, gq, parse_rational, rat, Backend, GaussianRational, ParseRationalError,
    Scalar, Tolerance,
};

pub use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("{op}: dimension mismatch {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("odd dimension {0} where an even one is required")]
    OddDimension(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("{0}: empty input")]
    EmptyInput(&'static str),
    #[error("shape error: {0}")]
    Shape(String),
}
