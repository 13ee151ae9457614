//! Seeded Cayley-transform samples of `SO(d)` and `SO_J(d)`.

use num_complex::Complex64;
use rand::Rng;

use super::SoError;
use crate::linalg::{inverse, j_form, Backend, Matrix, Scalar};
use crate::sample::{rng, SampleRng};

const MAX_RETRIES: usize = 16;

fn random_entry<T: Scalar>(rng: &mut SampleRng) -> T {
    match T::BACKEND {
        Backend::Exact => T::from_ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4)),
        Backend::Float => T::from_c64(Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
            .expect("float backend converts from c64"),
    }
}

fn random_skew<T: Scalar>(rng: &mut SampleRng, d: usize) -> Matrix<T> {
    crate::sample::real_skew(rng, d, random_entry::<T>)
}

/// `(I - x)(I + x)^{-1}`, or `None` when `I + x` is singular.
fn cayley<T: Scalar>(x: &Matrix<T>) -> Option<Matrix<T>> {
    let id = Matrix::identity(x.rows());
    let plus = inverse(&id.add(x).ok()?).ok()?;
    id.sub(x).ok()?.mul(&plus).ok()
}

/// Cayley transform of a random real skew matrix drawn from `rng`.
///
/// Real skew matrices have purely imaginary spectrum, so `I + S` is always
/// invertible in exact arithmetic; the retry bound only guards the float
/// pivot threshold.
pub fn random_so_with<T: Scalar>(rng: &mut SampleRng, d: usize) -> Result<Matrix<T>, SoError> {
    if d < 2 {
        return Err(SoError::Constraint(format!("random_so needs d >= 2, got {d}")));
    }
    for _ in 0..MAX_RETRIES {
        if let Some(m) = cayley(&random_skew::<T>(rng, d)) {
            return Ok(m);
        }
    }
    Err(SoError::CayleyRetries(MAX_RETRIES))
}

/// Deterministic random element of `SO(d)` for a seed.
pub fn random_so<T: Scalar>(d: usize, seed: u64) -> Result<Matrix<T>, SoError> {
    random_so_with(&mut rng(seed), d)
}

/// Random element of `SO_J(d)`: the Cayley transform of `Y J` with `Y` skew,
/// which satisfies `X J + J X^T = 0`.
pub fn random_so_j<T: Scalar>(d: usize, seed: u64) -> Result<Matrix<T>, SoError> {
    if d < 2 || d % 2 == 1 {
        return Err(SoError::Constraint(format!(
            "random_so_j needs an even d >= 2, got {d}"
        )));
    }
    let mut r = rng(seed);
    let j = j_form::<T>(d / 2);
    for _ in 0..MAX_RETRIES {
        let x = random_skew::<T>(&mut r, d).mul(&j)?;
        if let Some(m) = cayley(&x) {
            return Ok(m);
        }
    }
    Err(SoError::CayleyRetries(MAX_RETRIES))
}
