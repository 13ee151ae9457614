use serde::{Deserialize, Serialize};

use super::elimination::determinant;
use super::matrix::{block_diag, Matrix};
use super::scalar::{Backend, Scalar, Tolerance};
use super::LinalgError;

/// Which symmetric bilinear form a group preserves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `A A^T = I`.
    Standard,
    /// `A J A^T = J` with `J` built from 2x2 blocks `[[0,1],[1,0]]`.
    J,
}

/// `J_{2n}`: `n` diagonal copies of `[[0,1],[1,0]]`.
pub fn j_form<T: Scalar>(n: usize) -> Matrix<T> {
    let j2 = Matrix::from_rows(vec![vec![T::zero(), T::one()], vec![T::one(), T::zero()]])
        .expect("2x2");
    if n == 0 {
        return Matrix::zeros(0, 0);
    }
    block_diag(&vec![j2; n]).expect("nonempty")
}

/// Gram matrix of the given form in dimension `d`.
pub fn form_matrix<T: Scalar>(form: Form, d: usize) -> Result<Matrix<T>, LinalgError> {
    match form {
        Form::Standard => Ok(Matrix::identity(d)),
        Form::J if d.is_multiple_of(2) => Ok(j_form(d / 2)),
        Form::J => Err(LinalgError::OddDimension(d)),
    }
}

/// Inverse of a matrix preserving `form`: `A^T` or `J A^T J`.
pub fn orthogonal_inverse<T: Scalar>(a: &Matrix<T>, form: Form) -> Result<Matrix<T>, LinalgError> {
    match form {
        Form::Standard => Ok(a.transpose()),
        Form::J => {
            let j = form_matrix(Form::J, a.dim()?)?;
            j.mul(&a.transpose())?.mul(&j)
        }
    }
}

/// Membership in `SO(d)` or `SO_J(d)`: the form is preserved and `det = 1`.
///
/// Float residuals of `A G A^T` grow like `d max|A|^2`, so that is the scale
/// the tolerance is relative to. Once the form is preserved `det A` is `+-1`,
/// and telling the two apart needs no fine threshold.
pub fn is_special_orthogonal<T: Scalar>(a: &Matrix<T>, form: Form, tol: &Tolerance) -> bool {
    let Ok(d) = a.dim() else { return false };
    let Ok(g) = form_matrix::<T>(form, d) else {
        return false;
    };
    let Ok(lhs) = a.mul(&g).and_then(|ag| ag.mul(&a.transpose())) else {
        return false;
    };
    let preserved = if T::BACKEND == Backend::Exact {
        lhs == g
    } else {
        let scale = (d as f64 * a.max_magnitude().powi(2)).max(1.0);
        tol.accepts(lhs.max_abs_diff(&g), scale)
    };
    preserved
        && determinant(a)
            .map(|det| {
                if T::BACKEND == Backend::Exact {
                    det == T::one()
                } else {
                    (det - T::one()).magnitude() < 0.5
                }
            })
            .unwrap_or(false)
}
