use num_complex::Complex64;

use super::rep::Representation;
use super::SoError;
use crate::linalg::{
    block_diag, is_special_orthogonal, Form, Matrix, Scalar, Tolerance,
};
use crate::words::{abelianize, evaluate, Word};

/// `D_c = [[(c + 1/c)/2, i(c - 1/c)/2], [-i(c - 1/c)/2, (c + 1/c)/2]]`, the
/// image of `c` under the isomorphism `C^* -> SO(2)`.
pub fn d_c<T: Scalar>(c: &T) -> Result<Matrix<T>, SoError> {
    if c.is_zero() {
        return Err(SoError::ZeroScalar);
    }
    let inv = T::one() / c.clone();
    let half = T::from_ratio(1, 2);
    let diag = (c.clone() + inv.clone()) * half.clone();
    let off = T::imag_unit() * (c.clone() - inv) * half;
    Ok(Matrix::from_rows(vec![
        vec![diag.clone(), off.clone()],
        vec![-off, diag],
    ])?)
}

/// `Q(D_c)` as computed from the defining permutation sum: `2i(c - 1/c)`.
pub fn d_c_q_value<T: Scalar>(c: &T) -> T {
    T::from_i64(2) * T::imag_unit() * (c.clone() - T::one() / c.clone())
}

/// Block diagonal `diag(a, D_c, ..., D_c)` of size `2n`, for any 4x4 `a`.
///
/// A 4x4 corner in a `2n x 2n` matrix leaves room for exactly `n - 2` blocks
/// `D_c`; at `c = 1` this is extension by the `(2n-4)`-dimensional identity.
pub fn embed_block<T: Scalar>(a: &Matrix<T>, c: &T, n: usize) -> Result<Matrix<T>, SoError> {
    if a.rows() != 4 || a.cols() != 4 {
        return Err(SoError::Shape(format!(
            "expected a 4x4 matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if n < 2 {
        return Err(SoError::Constraint(format!("n must be at least 2, got {n}")));
    }
    let d = d_c(c)?;
    let mut blocks = vec![a.clone()];
    blocks.extend(std::iter::repeat_n(d, n - 2));
    Ok(block_diag(&blocks)?)
}

/// `iota_c: SO(4) -> SO(2n)`; [`embed_block`] restricted to `SO(4)`.
pub fn iota_c<T: Scalar>(
    a: &Matrix<T>,
    c: &T,
    n: usize,
    tol: &Tolerance,
) -> Result<Matrix<T>, SoError> {
    if !is_special_orthogonal(a, Form::Standard, tol) {
        return Err(SoError::NotSpecialOrthogonal("argument of iota_c".into()));
    }
    embed_block(a, c, n)
}

/// `alpha_{c1,c2}`: sends `gamma_i -> iota_{c_i}(rho(gamma_i))` for a
/// two-generator representation into `SO(4)`.
pub fn alpha_c1c2<T: Scalar>(
    rep: &Representation<T>,
    c1: &T,
    c2: &T,
    n: usize,
) -> Result<Representation<T>, SoError> {
    if c1.is_zero() || c2.is_zero() {
        return Err(SoError::ZeroScalar);
    }
    if rep.dim() != 4 || rep.form() != Form::Standard {
        return Err(SoError::Shape(
            "alpha_{c1,c2} takes a standard-form representation into SO(4)".into(),
        ));
    }
    let mut gens = Vec::new();
    for (&g, m) in rep.generators() {
        let c = match g {
            1 => c1,
            2 => c2,
            _ => {
                return Err(SoError::Shape(format!(
                    "alpha_{{c1,c2}} is defined on two generators, found {g}"
                )))
            }
        };
        gens.push((g, embed_block(m, c, n)?));
    }
    Representation::new(Form::Standard, rep.group(), gens)
}

/// `iota_c(rho(w))` with `c = c1^{w_1} c2^{w_2}` from the abelianization of `w`.
pub fn alpha_word_image<T: Scalar>(
    rep: &Representation<T>,
    c1: &T,
    c2: &T,
    n: usize,
    w: &Word,
) -> Result<Matrix<T>, SoError> {
    let (w1, w2) = abelianize(w)?;
    let c = c1.powi(w1) * c2.powi(w2);
    let image = evaluate(w, &rep.assignment()?)?;
    embed_block(&image, &c, n)
}

/// `K_{2n}`: `n` diagonal copies of `(1/sqrt 2) [[1, i], [1, -i]]`.
pub fn k_matrix(n: usize) -> Matrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let k2 = Matrix::from_rows(vec![
        vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)],
        vec![Complex64::new(s, 0.0), Complex64::new(0.0, -s)],
    ])
    .expect("2x2");
    block_diag(&vec![k2; n.max(1)]).expect("nonempty")
}

/// `K_{2n}^{-1}`: copies of `(1/sqrt 2) [[1, 1], [-i, i]]`.
pub fn k_inverse(n: usize) -> Matrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let k2 = Matrix::from_rows(vec![
        vec![Complex64::new(s, 0.0), Complex64::new(s, 0.0)],
        vec![Complex64::new(0.0, -s), Complex64::new(0.0, s)],
    ])
    .expect("2x2");
    block_diag(&vec![k2; n.max(1)]).expect("nonempty")
}

/// `Phi(A) = K^{-1} A K`, identifying `SO_J(2n)` with `SO(2n)`.
pub fn phi_conj(a: &Matrix<Complex64>, tol: &Tolerance) -> Result<Matrix<Complex64>, SoError> {
    let d = a.dim()?;
    if d % 2 == 1 || !is_special_orthogonal(a, Form::J, tol) {
        return Err(SoError::NotSpecialOrthogonal("argument of Phi (J form)".into()));
    }
    Ok(k_inverse(d / 2).mul(a)?.mul(&k_matrix(d / 2))?)
}
