//! The representations of `Z_p * Z_q` used to build orthogonal pairs that
//! no trace function tells apart.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::maps::d_c;
use super::rep::{GroupTag, Representation};
use super::sym2::Sym2Frame;
use super::SoError;
use crate::linalg::{block_diag, is_special_orthogonal, Form, Matrix, Scalar, Tolerance};

/// `exp(2 pi i k / order)`.
pub fn root_of_unity(order: u64, k: i64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * k as f64 / order as f64)
}

/// `diag(D_xi, D_xi^2, ..., D_xi^m)` with `xi = exp(2 pi i / root_order)`.
/// Its `2m` eigenvalues `xi^{+-k}` are distinct when `root_order > 2m`.
pub fn b_blocks(root_order: u64, m: usize) -> Result<Matrix<Complex64>, SoError> {
    if m == 0 || root_order <= 2 * m as u64 {
        return Err(SoError::Constraint(format!(
            "b_blocks needs m >= 1 and root order > 2m, got order {root_order}, m = {m}"
        )));
    }
    let blocks = (1..=m as i64)
        .map(|k| d_c(&root_of_unity(root_order, k)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(block_diag(&blocks)?)
}

/// `diag(D_c, D_{c^4}, 1)` in `SO(5)`.
pub fn b_c5<T: Scalar>(c: &T) -> Result<Matrix<T>, SoError> {
    Ok(block_diag(&[
        d_c(c)?,
        d_c(&c.powi(4))?,
        Matrix::identity(1),
    ])?)
}

/// The 5x5 cyclic permutation matrix with ones at `(i, i+1)` and `(5, 1)`.
pub fn cyclic_permutation<T: Scalar>() -> Matrix<T> {
    Matrix::from_fn(5, 5, |i, j| {
        if j == (i + 1) % 5 {
            T::one()
        } else {
            T::zero()
        }
    })
}

fn check_orders(p: u64, q: u64, bound: u64, what: &str) -> Result<(), SoError> {
    if p <= bound || q <= bound {
        return Err(SoError::Constraint(format!(
            "{what} needs p, q > {bound}, got p = {p}, q = {q}"
        )));
    }
    Ok(())
}

/// `psi_A`: generator 1 to `B_{xi_p}`, generator 2 to `A B_{xi_q} A^{-1}`.
pub fn psi_a(
    a: &Matrix<Complex64>,
    p: u64,
    q: u64,
    tol: &Tolerance,
) -> Result<Representation<Complex64>, SoError> {
    check_orders(p, q, 16, "psi_A")?;
    if a.rows() != 5 || !is_special_orthogonal(a, Form::Standard, tol) {
        return Err(SoError::NotSpecialOrthogonal("A in SO(5)".into()));
    }
    let g1 = b_c5(&root_of_unity(p, 1))?;
    let g2 = b_c5(&root_of_unity(q, 1))?.conjugate_by(a, &a.transpose())?;
    Representation::new(Form::Standard, GroupTag::ZpZq { p, q }, [(1, g1), (2, g2)])
}

/// `eta_A` for `m > 2` and `p, q > 2m`.
pub fn eta_a(
    a: &Matrix<Complex64>,
    p: u64,
    q: u64,
    m: usize,
    tol: &Tolerance,
) -> Result<Representation<Complex64>, SoError> {
    if m <= 2 {
        return Err(SoError::Constraint(format!("eta_A needs m > 2, got {m}")));
    }
    eta_any_m(a, p, q, m, tol)
}

/// `eta_A` without the lower bound on `m`: generator 1 to `b_blocks(p, m)`,
/// generator 2 to `A b_blocks(q, m) A^{-1}`. Needed for the 4-dimensional
/// summand in dimension 18.
pub fn eta_any_m(
    a: &Matrix<Complex64>,
    p: u64,
    q: u64,
    m: usize,
    tol: &Tolerance,
) -> Result<Representation<Complex64>, SoError> {
    if m == 0 {
        return Err(SoError::Constraint("eta_A needs m >= 1".into()));
    }
    check_orders(p, q, 2 * m as u64, "eta_A")?;
    if a.rows() != 2 * m || !is_special_orthogonal(a, Form::Standard, tol) {
        return Err(SoError::NotSpecialOrthogonal(format!("A in SO({})", 2 * m)));
    }
    let g1 = b_blocks(p, m)?;
    let g2 = b_blocks(q, m)?.conjugate_by(a, &a.transpose())?;
    Representation::new(Form::Standard, GroupTag::ZpZq { p, q }, [(1, g1), (2, g2)])
}

/// `alpha psi_A` in `SO(14)` for `n = 7`, and `alpha psi_A + eta_{A'}` in
/// `SO(2n)` for `n >= 9`, where `eta` has dimension `2n - 14`.
///
/// `n = 8` is excluded: the complement would be `SO(2)`, which is abelian.
pub fn rho_construction(
    n: usize,
    p: u64,
    q: u64,
    a5: &Matrix<Complex64>,
    a2m: Option<&Matrix<Complex64>>,
    tol: &Tolerance,
) -> Result<Representation<Complex64>, SoError> {
    if n == 8 {
        return Err(SoError::Constraint("n = 8 excluded".into()));
    }
    if n < 7 {
        return Err(SoError::Constraint(format!("n must be 7 or at least 9, got {n}")));
    }
    let bound = (2 * n as u64 - 14).max(16);
    check_orders(p, q, bound, "the construction")?;
    let psi = psi_a(a5, p, q, tol)?;
    let frame = Sym2Frame::new();
    let gens = psi
        .generators()
        .iter()
        .map(|(&g, m)| Ok((g, frame.alpha14(m, tol)?)))
        .collect::<Result<Vec<_>, SoError>>()?;
    let alpha_psi = Representation::new(Form::Standard, psi.group(), gens)?;
    if n == 7 {
        return Ok(alpha_psi);
    }
    let a2m = a2m.ok_or_else(|| {
        SoError::Constraint(format!("n = {n} needs an SO({}) parameter for eta", 2 * n - 14))
    })?;
    let eta = eta_any_m(a2m, p, q, n - 7, tol)?;
    alpha_psi.direct_sum(&eta)
}

/// `diag(-1, 1, ..., 1)`, an orthogonal matrix of determinant `-1`.
pub fn sigma_matrix<T: Scalar>(d: usize) -> Matrix<T> {
    let mut m = Matrix::identity(d);
    if d > 0 {
        m[(0, 0)] = -T::one();
    }
    m
}

/// Conjugation by [`sigma_matrix`]; an involution on standard-form representations.
pub fn sigma_involution<T: Scalar>(rep: &Representation<T>) -> Result<Representation<T>, SoError> {
    if rep.form() != Form::Standard {
        return Err(SoError::Shape("sigma acts on standard-form representations".into()));
    }
    let m = sigma_matrix::<T>(rep.dim());
    rep.conjugate(&m, &m)
}
