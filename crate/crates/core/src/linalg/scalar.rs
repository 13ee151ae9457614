//! Complex scalars over two backends.
//!
//! The exact backend is the Gaussian rationals `Q(i)` with arbitrary-precision
//! numerators and denominators; its arithmetic and equality are bit-exact. The
//! float backend is `Complex64`, and every comparison on it goes through a
//! [`Tolerance`].

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Exact Gaussian rational `a + bi`.
pub type GaussianRational = Complex<BigRational>;

/// Which arithmetic a value or matrix lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

/// Comparison thresholds for the float backend. The exact backend ignores it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
    /// Pivot threshold for rank decisions, relative to the largest entry.
    pub rank_pivot_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs_eps: 1e-9,
            rel_eps: 1e-9,
            rank_pivot_eps: 1e-8,
        }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64, rank_pivot_eps: f64) -> Self {
        assert!(
            abs_eps >= 0.0 && rel_eps >= 0.0 && rank_pivot_eps >= 0.0,
            "tolerances must be nonnegative"
        );
        Tolerance {
            abs_eps,
            rel_eps,
            rank_pivot_eps,
        }
    }

    /// Same thresholds for absolute and relative comparisons.
    pub fn uniform(eps: f64) -> Self {
        Tolerance::new(eps, eps, Tolerance::default().rank_pivot_eps)
    }

    /// `true` when a residual of size `residual` is acceptable against values
    /// of magnitude `scale`.
    pub fn accepts(&self, residual: f64, scale: f64) -> bool {
        residual <= self.abs_eps + self.rel_eps * scale
    }
}

/// Field operations shared by both backends.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const BACKEND: Backend;

    fn from_i64(v: i64) -> Self;

    /// `num / den`; exact on the exact backend.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// The imaginary unit.
    fn imag_unit() -> Self;

    /// Lossy conversion, used for reporting and pivot selection.
    fn to_c64(&self) -> Complex64;

    /// Returns `None` on the exact backend.
    fn from_c64(v: Complex64) -> Option<Self>;

    fn magnitude(&self) -> f64 {
        self.to_c64().norm()
    }

    /// Principal square root, when it exists in the backend.
    fn sqrt(&self) -> Option<Self>;

    /// Zero test. Exact: literal equality. Float: `|self| <= abs + rel * scale`.
    fn is_negligible(&self, tol: &Tolerance, scale: f64) -> bool;

    fn approx_eq(&self, other: &Self, tol: &Tolerance) -> bool {
        let scale = self.magnitude().max(other.magnitude());
        (self.clone() - other.clone()).is_negligible(tol, scale)
    }

    /// Clears denominators: returns `(k, m)` with `m_j` Gaussian integers and
    /// `values_j = k * m_j`, or `None` when the backend has no integer form or
    /// the numerators do not fit in `i128`.
    fn integer_scaling(_values: &[Self]) -> Option<(Self, Vec<(i128, i128)>)> {
        None
    }

    fn from_gaussian_integer(re: &BigInt, im: &BigInt) -> Self;

    /// Exact on the exact backend, rounded on the float backend.
    fn from_gaussian_rational(v: &GaussianRational) -> Self;

    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

impl Scalar for Complex64 {
    const BACKEND: Backend = Backend::Float;

    fn from_i64(v: i64) -> Self {
        Complex64::new(v as f64, 0.0)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn imag_unit() -> Self {
        Complex64::i()
    }

    fn to_c64(&self) -> Complex64 {
        *self
    }

    fn from_c64(v: Complex64) -> Option<Self> {
        Some(v)
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Complex64::sqrt(*self))
    }

    fn is_negligible(&self, tol: &Tolerance, scale: f64) -> bool {
        tol.accepts(self.norm(), scale)
    }

    fn from_gaussian_rational(v: &GaussianRational) -> Self {
        v.to_c64()
    }

    fn from_gaussian_integer(re: &BigInt, im: &BigInt) -> Self {
        Complex64::new(
            re.to_f64().unwrap_or(f64::NAN),
            im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Scalar for GaussianRational {
    const BACKEND: Backend = Backend::Exact;

    fn from_i64(v: i64) -> Self {
        Complex::new(BigRational::from_integer(v.into()), BigRational::zero())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    fn imag_unit() -> Self {
        Complex::new(BigRational::zero(), BigRational::one())
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    fn from_c64(_v: Complex64) -> Option<Self> {
        None
    }

    fn sqrt(&self) -> Option<Self> {
        // Only square roots of nonnegative rational squares are produced.
        if !self.im.is_zero() || self.re.is_negative() {
            return None;
        }
        let num = self.re.numer().sqrt();
        let den = self.re.denom().sqrt();
        if &num * &num == *self.re.numer() && &den * &den == *self.re.denom() {
            Some(Complex::new(BigRational::new(num, den), BigRational::zero()))
        } else {
            None
        }
    }

    fn is_negligible(&self, _tol: &Tolerance, _scale: f64) -> bool {
        self.is_zero()
    }

    fn approx_eq(&self, other: &Self, _tol: &Tolerance) -> bool {
        self == other
    }

    fn integer_scaling(values: &[Self]) -> Option<(Self, Vec<(i128, i128)>)> {
        let mut lcm = BigInt::one();
        for v in values {
            lcm = lcm.lcm(v.re.denom()).lcm(v.im.denom());
        }
        let to_i128 = |r: &BigRational| -> Option<i128> {
            (r.numer() * (&lcm / r.denom())).to_i128()
        };
        let ints = values
            .iter()
            .map(|v| Some((to_i128(&v.re)?, to_i128(&v.im)?)))
            .collect::<Option<Vec<_>>>()?;
        let scale = Complex::new(
            BigRational::new(BigInt::one(), lcm),
            BigRational::zero(),
        );
        Some((scale, ints))
    }

    fn from_gaussian_rational(v: &GaussianRational) -> Self {
        v.clone()
    }

    fn from_gaussian_integer(re: &BigInt, im: &BigInt) -> Self {
        Complex::new(
            BigRational::from_integer(re.clone()),
            BigRational::from_integer(im.clone()),
        )
    }
}

/// Builds an exact Gaussian rational `re + im*i` from small rationals.
pub fn gq(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    Complex::new(
        BigRational::new(re.0.into(), re.1.into()),
        BigRational::new(im.0.into(), im.1.into()),
    )
}

/// Exact real rational `num/den`.
pub fn rat(num: i64, den: i64) -> GaussianRational {
    GaussianRational::from_ratio(num, den)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse rational {0:?}")]
pub struct ParseRationalError(pub String);

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(
            BigInt::from_str(s).map_err(|_| err())?,
        )),
    }
}

/// Inverse of [`parse_rational`]; integers print without a denominator.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["3/2", "-7", "0", "12345678901234567890/7"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("6/4").unwrap()), "3/2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn exact_sqrt_only_for_squares() {
        assert_eq!(rat(9, 4).sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).sqrt(), None);
        assert_eq!(rat(-1, 1).sqrt(), None);
    }

    #[test]
    fn integer_scaling_clears_denominators() {
        let vals = vec![gq((1, 2), (1, 3)), gq((5, 1), (0, 1))];
        let (k, ints) = GaussianRational::integer_scaling(&vals).unwrap();
        assert_eq!(k, rat(1, 6));
        assert_eq!(ints, vec![(3, 2), (30, 0)]);
        assert!(Complex64::integer_scaling(&[Complex64::new(1.0, 0.0)]).is_none());
    }

    #[test]
    fn powi_handles_negative_exponents() {
        assert_eq!(rat(2, 1).powi(-3), rat(1, 8));
        assert_eq!(rat(3, 2).powi(0), rat(1, 1));
        let c = Complex64::new(0.0, 1.0);
        assert!(c.powi(4).approx_eq(&Complex64::new(1.0, 0.0), &Tolerance::default()));
    }

    #[test]
    fn float_tolerance_is_explicit() {
        let tol = Tolerance::new(1e-12, 0.0, 1e-8);
        let a = Complex64::new(1.0, 0.0);
        let b = Complex64::new(1.0 + 1e-10, 0.0);
        assert!(!a.approx_eq(&b, &tol));
        assert!(a.approx_eq(&b, &Tolerance::uniform(1e-9)));
    }
}
