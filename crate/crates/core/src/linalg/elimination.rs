//! Row reduction: determinants, inverses, rank and kernels.

use super::matrix::Matrix;
use super::scalar::{Backend, Scalar, Tolerance};
use super::LinalgError;

/// Determinant. Fraction-free (Bareiss) elimination on the exact backend,
/// LU with partial pivoting on the float backend.
pub fn determinant<T: Scalar>(a: &Matrix<T>) -> Result<T, LinalgError> {
    let n = a.dim()?;
    if n == 0 {
        return Ok(T::one());
    }
    Ok(match T::BACKEND {
        Backend::Exact => bareiss(a.clone(), n),
        Backend::Float => lu_determinant(a.clone(), n),
    })
}

fn bareiss<T: Scalar>(mut m: Matrix<T>, n: usize) -> T {
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return T::zero();
            };
            swap_rows(&mut m, k, swap);
            negate = !negate;
        }
        let pivot = m[(k, k)].clone();
        for i in k + 1..n {
            let lead = m[(i, k)].clone();
            for j in k + 1..n {
                let v = (m[(i, j)].clone() * pivot.clone() - lead.clone() * m[(k, j)].clone())
                    / prev.clone();
                m[(i, j)] = v;
            }
            m[(i, k)] = T::zero();
        }
        prev = pivot;
    }
    let det = m[(n - 1, n - 1)].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn lu_determinant<T: Scalar>(mut m: Matrix<T>, n: usize) -> T {
    let mut det = T::one();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| m[(x, k)].magnitude().total_cmp(&m[(y, k)].magnitude()))
            .expect("nonempty range");
        if m[(p, k)].is_zero() {
            return T::zero();
        }
        if p != k {
            swap_rows(&mut m, p, k);
            det = -det;
        }
        let pivot = m[(k, k)].clone();
        det = det * pivot.clone();
        for i in k + 1..n {
            let factor = m[(i, k)].clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = m[(i, j)].clone() - factor.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
            }
        }
    }
    det
}

fn swap_rows<T: Scalar>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let tmp = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = tmp;
    }
}

/// Inverse by Gauss-Jordan elimination with default tolerances.
pub fn inverse<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>, LinalgError> {
    inverse_with(a, &Tolerance::default())
}

/// Inverse by Gauss-Jordan elimination. On the float backend a pivot below
/// `rank_pivot_eps * max|a|` counts as singular.
pub fn inverse_with<T: Scalar>(a: &Matrix<T>, tol: &Tolerance) -> Result<Matrix<T>, LinalgError> {
    let n = a.dim()?;
    let threshold = tol.rank_pivot_eps * a.max_magnitude();
    let mut m = a.clone();
    let mut inv = Matrix::<T>::identity(n);
    for k in 0..n {
        let p = match T::BACKEND {
            Backend::Exact => (k..n).find(|&i| !m[(i, k)].is_zero()),
            Backend::Float => (k..n)
                .max_by(|&x, &y| m[(x, k)].magnitude().total_cmp(&m[(y, k)].magnitude()))
                .filter(|&i| m[(i, k)].magnitude() > threshold),
        }
        .ok_or(LinalgError::Singular)?;
        swap_rows(&mut m, p, k);
        swap_rows(&mut inv, p, k);
        let pivot_inv = T::one() / m[(k, k)].clone();
        for j in 0..n {
            m[(k, j)] = m[(k, j)].clone() * pivot_inv.clone();
            inv[(k, j)] = inv[(k, j)].clone() * pivot_inv.clone();
        }
        for i in 0..n {
            if i == k || m[(i, k)].is_zero() {
                continue;
            }
            let factor = m[(i, k)].clone();
            for j in 0..n {
                let v = m[(i, j)].clone() - factor.clone() * m[(k, j)].clone();
                m[(i, j)] = v;
                let w = inv[(i, j)].clone() - factor.clone() * inv[(k, j)].clone();
                inv[(i, j)] = w;
            }
        }
    }
    Ok(inv)
}

/// Reduced row echelon form with the pivot positions that produced it.
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    /// `(row, column)` of each pivot, in elimination order.
    pub pivots: Vec<(usize, usize)>,
}

/// Gauss-Jordan elimination. Exact: leftmost nonzero pivot. Float: full
/// pivoting over the unreduced rows and columns, stopping once the largest
/// candidate drops below `rank_pivot_eps * max|a|`.
pub fn row_reduce<T: Scalar>(a: &Matrix<T>, tol: &Tolerance) -> Echelon<T> {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut col_used = vec![false; cols];
    let threshold = tol.rank_pivot_eps * a.max_magnitude();

    for r in 0..rows {
        let choice = match T::BACKEND {
            Backend::Exact => (0..cols)
                .filter(|&c| !col_used[c])
                .find_map(|c| (r..rows).find(|&i| !m[(i, c)].is_zero()).map(|i| (i, c))),
            Backend::Float => {
                let mut best: Option<(usize, usize, f64)> = None;
                for c in (0..cols).filter(|&c| !col_used[c]) {
                    for i in r..rows {
                        let mag = m[(i, c)].magnitude();
                        if best.is_none_or(|(_, _, b)| mag > b) {
                            best = Some((i, c, mag));
                        }
                    }
                }
                best.filter(|&(_, _, mag)| mag > threshold && mag > 0.0)
                    .map(|(i, c, _)| (i, c))
            }
        };
        let Some((pr, pc)) = choice else { break };
        swap_rows(&mut m, pr, r);
        col_used[pc] = true;
        let pivot_inv = T::one() / m[(r, pc)].clone();
        for j in 0..cols {
            m[(r, j)] = m[(r, j)].clone() * pivot_inv.clone();
        }
        m[(r, pc)] = T::one();
        for i in 0..rows {
            if i == r || m[(i, pc)].is_zero() {
                continue;
            }
            let factor = m[(i, pc)].clone();
            for j in 0..cols {
                let v = m[(i, j)].clone() - factor.clone() * m[(r, j)].clone();
                m[(i, j)] = v;
            }
            m[(i, pc)] = T::zero();
        }
        pivots.push((r, pc));
    }
    Echelon { reduced: m, pivots }
}

/// Rank of a (possibly rectangular) matrix.
pub fn rank<T: Scalar>(a: &Matrix<T>, tol: &Tolerance) -> usize {
    row_reduce(a, tol).pivots.len()
}

/// `cols - rank`.
pub fn kernel_dimension<T: Scalar>(a: &Matrix<T>, tol: &Tolerance) -> usize {
    a.cols() - rank(a, tol)
}

/// Basis of the right kernel `{x : a x = 0}`, one vector per free column.
pub fn nullspace<T: Scalar>(a: &Matrix<T>, tol: &Tolerance) -> Vec<Vec<T>> {
    let ech = row_reduce(a, tol);
    let cols = a.cols();
    let mut is_pivot_col = vec![false; cols];
    for &(_, c) in &ech.pivots {
        is_pivot_col[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot_col[f])
        .map(|f| {
            let mut x = vec![T::zero(); cols];
            x[f] = T::one();
            for &(r, c) in &ech.pivots {
                x[c] = -ech.reduced[(r, f)].clone();
            }
            x
        })
        .collect()
}

/// `a - lambda I`.
pub fn shift<T: Scalar>(a: &Matrix<T>, lambda: &T) -> Result<Matrix<T>, LinalgError> {
    let d = a.dim()?;
    let mut m = a.clone();
    for i in 0..d {
        m[(i, i)] = m[(i, i)].clone() - lambda.clone();
    }
    Ok(m)
}

/// Geometric multiplicity of a known eigenvalue, as `dim ker(a - lambda I)`.
pub fn eigen_multiplicity<T: Scalar>(
    a: &Matrix<T>,
    lambda: &T,
    tol: &Tolerance,
) -> Result<usize, LinalgError> {
    Ok(kernel_dimension(&shift(a, lambda)?, tol))
}
