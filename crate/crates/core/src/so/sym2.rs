//! `Sym^2(C^5)` in the basis `e_i . e_j` (`i <= j`), where
//! `v . w = v (x) w + w (x) v`.
//!
//! The inner product induced from `C^5 (x) C^5` is diagonal in this basis with
//! values 4 on `e_i . e_i` and 2 on `e_i . e_j`, `i != j`. The invariant vector
//! `z = sum e_i (x) e_i = (1/2) sum e_i . e_i` splits the space as
//! `C z + z^perp`, and `SO(5)` acts on the 14-dimensional `z^perp` irreducibly.

use num_complex::Complex64;

use super::SoError;
use crate::linalg::{is_special_orthogonal, Form, Matrix, Scalar, Tolerance};

pub const SYM2_DIM: usize = 15;

/// Basis labels `(i, j)`, `0 <= i <= j < 5`, in lexicographic order.
pub fn sym2_labels() -> Vec<(usize, usize)> {
    (0..5).flat_map(|i| (i..5).map(move |j| (i, j))).collect()
}

/// Position of the label `e_i . e_j` (either order).
pub fn sym2_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // Rows before i contribute 5 + 4 + ... entries.
    i * 5 - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// Coordinates of `v . w`: `v_i w_i` on `e_i . e_i` and `v_i w_j + v_j w_i`
/// on `e_i . e_j`.
pub fn odot<T: Scalar>(v: &[T], w: &[T]) -> Vec<T> {
    sym2_labels()
        .into_iter()
        .map(|(i, j)| {
            if i == j {
                v[i].clone() * w[i].clone()
            } else {
                v[i].clone() * w[j].clone() + v[j].clone() * w[i].clone()
            }
        })
        .collect()
}

/// Gram matrix of the induced inner product.
pub fn sym2_gram<T: Scalar>() -> Matrix<T> {
    Matrix::diagonal(
        sym2_labels()
            .into_iter()
            .map(|(i, j)| T::from_i64(if i == j { 4 } else { 2 }))
            .collect(),
    )
}

/// Coordinates of the invariant vector `z`.
pub fn sym2_z<T: Scalar>() -> Vec<T> {
    sym2_labels()
        .into_iter()
        .map(|(i, j)| if i == j { T::from_ratio(1, 2) } else { T::zero() })
        .collect()
}

/// Matrix of `v . w -> (a v) . (a w)` on the 15-dimensional space.
pub fn sym2_action<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>, SoError> {
    if a.rows() != 5 || a.cols() != 5 {
        return Err(SoError::Shape(format!(
            "Sym^2 action takes a 5x5 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let col = |k: usize| -> Vec<T> { (0..5).map(|r| a[(r, k)].clone()).collect() };
    let mut out = Matrix::zeros(SYM2_DIM, SYM2_DIM);
    for (c, (i, j)) in sym2_labels().into_iter().enumerate() {
        // By bilinearity the image of e_i . e_j is (a e_i) . (a e_j).
        for (r, v) in odot(&col(i), &col(j)).into_iter().enumerate() {
            out[(r, c)] = v;
        }
    }
    Ok(out)
}

/// The vectors `(e1 + e2) . (e1 - e2)` and `(e3 + e4) . (e3 - e4)`, i.e.
/// `e1.e1 - e2.e2` and `e3.e3 - e4.e4`. Both lie in `z^perp` and are
/// orthogonal to each other.
pub fn printed_f_basis<T: Scalar>() -> [Vec<T>; 2] {
    let e = |k: usize, s: i64| -> Vec<T> {
        (0..5)
            .map(|r| {
                if r == k {
                    T::one()
                } else if r == k + 1 {
                    T::from_i64(s)
                } else {
                    T::zero()
                }
            })
            .collect()
    };
    [odot(&e(0, 1), &e(0, -1)), odot(&e(2, 1), &e(2, -1))]
}

/// Fixed space of `Sym^2(b_c5(c))` inside `z^perp` for generic `c`:
/// `e1.e1 + e2.e2 - 2 e5.e5` and `e3.e3 + e4.e4 - 2 e5.e5`.
///
/// `D_c` has eigenvectors `(1, -i)` and `(1, i)` with eigenvalues `c` and
/// `1/c`; their product `e1.e1 + e2.e2` is fixed.
pub fn sym2_fixed_space<T: Scalar>() -> [Vec<T>; 2] {
    let v = |a: usize, b: usize| -> Vec<T> {
        sym2_labels()
            .into_iter()
            .map(|(i, j)| {
                if i != j {
                    T::zero()
                } else if i == a || i == b {
                    T::one()
                } else if i == 4 {
                    T::from_i64(-2)
                } else {
                    T::zero()
                }
            })
            .collect()
    };
    [v(0, 1), v(2, 3)]
}

/// A fixed orthonormal basis of `z^perp`: the ten vectors `e_i . e_j / sqrt 2`
/// (`i < j`), then the Gram-Schmidt orthonormalization of
/// `e_i.e_i - e_{i+1}.e_{i+1}` (`i = 1..4`).
#[derive(Debug, Clone)]
pub struct Sym2Frame {
    /// 15 x 14; column `k` holds the coordinates of basis vector `k`.
    basis: Matrix<Complex64>,
    gram: Matrix<Complex64>,
}

impl Default for Sym2Frame {
    fn default() -> Self {
        Self::new()
    }
}

impl Sym2Frame {
    pub fn new() -> Self {
        let labels = sym2_labels();
        let gram = sym2_gram::<Complex64>();
        let inner = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
            (0..SYM2_DIM).map(|k| u[k] * gram[(k, k)] * v[k]).sum()
        };
        let mut vectors: Vec<Vec<Complex64>> = Vec::with_capacity(14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (idx, &(i, j)) in labels.iter().enumerate() {
            if i < j {
                let mut v = vec![Complex64::new(0.0, 0.0); SYM2_DIM];
                v[idx] = Complex64::new(s, 0.0);
                vectors.push(v);
            }
        }
        for i in 0..4 {
            let mut v = vec![Complex64::new(0.0, 0.0); SYM2_DIM];
            v[sym2_index(i, i)] = Complex64::new(1.0, 0.0);
            v[sym2_index(i + 1, i + 1)] = Complex64::new(-1.0, 0.0);
            for u in &vectors {
                let proj = inner(u, &v);
                for k in 0..SYM2_DIM {
                    v[k] -= proj * u[k];
                }
            }
            let norm = inner(&v, &v).sqrt();
            for x in &mut v {
                *x /= norm;
            }
            vectors.push(v);
        }
        let basis = Matrix::from_fn(SYM2_DIM, 14, |r, c| vectors[c][r]);
        Sym2Frame { basis, gram }
    }

    pub fn basis(&self) -> &Matrix<Complex64> {
        &self.basis
    }

    /// Inner product of two coordinate vectors.
    pub fn inner(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        (0..SYM2_DIM).map(|k| u[k] * self.gram[(k, k)] * v[k]).sum()
    }

    /// Coordinates in the orthonormal frame of a vector of `z^perp`.
    pub fn coordinates(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..14)
            .map(|c| {
                let col: Vec<Complex64> = (0..SYM2_DIM).map(|r| self.basis[(r, c)]).collect();
                self.inner(&col, v)
            })
            .collect()
    }

    /// The matrix of the `Sym^2` action of `a` on `z^perp` in this frame.
    pub fn alpha14<T: Scalar>(&self, a: &Matrix<T>, tol: &Tolerance) -> Result<Matrix<Complex64>, SoError> {
        if !is_special_orthogonal(a, Form::Standard, tol) {
            return Err(SoError::NotSpecialOrthogonal("argument of alpha".into()));
        }
        let s = sym2_action(&a.to_c64())?;
        let su = s.mul(&self.basis)?;
        let alpha = self.basis.transpose().mul(&self.gram)?.mul(&su)?;
        let back = self.basis.mul(&alpha)?;
        let residual = back.max_abs_diff(&su);
        if !tol.accepts(residual, su.max_magnitude().max(1.0)) {
            return Err(SoError::FrameNotPreserved(residual));
        }
        Ok(alpha)
    }
}
