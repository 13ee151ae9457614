//! Seeded random instances for checks and benchmarks.

use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rat, GaussianRational, Matrix, Scalar};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Small Gaussian rational: numerators in `-5..=5`, denominators in `1..=4`,
/// imaginary part present about half of the time.
pub fn gaussian_rational(rng: &mut SampleRng) -> GaussianRational {
    let re = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
    let im = if rng.gen_bool(0.5) {
        rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
    } else {
        GaussianRational::zero()
    };
    re + im * GaussianRational::imag_unit()
}

/// Small real rational with the same ranges as [`gaussian_rational`].
pub fn real_rational(rng: &mut SampleRng) -> GaussianRational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn exact_matrix(rng: &mut SampleRng, d: usize) -> Matrix<GaussianRational> {
    Matrix::from_fn(d, d, |_, _| gaussian_rational(rng))
}

pub fn exact_symmetric(rng: &mut SampleRng, d: usize) -> Matrix<GaussianRational> {
    let m = exact_matrix(rng, d);
    m.add(&m.transpose()).expect("square")
}

pub fn exact_skew(rng: &mut SampleRng, d: usize) -> Matrix<GaussianRational> {
    exact_matrix(rng, d).skew_part().expect("square")
}

/// Entries uniform in the unit square of the complex plane around 0.
pub fn float_matrix(rng: &mut SampleRng, d: usize) -> Matrix<Complex64> {
    Matrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    })
}

/// Random real skew-symmetric matrix with entries in `(-1, 1)`.
pub fn real_skew<T: Scalar>(
    rng: &mut SampleRng,
    d: usize,
    mut entry: impl FnMut(&mut SampleRng) -> T,
) -> Matrix<T> {
    let mut s = Matrix::zeros(d, d);
    for i in 0..d {
        for j in i + 1..d {
            let v = entry(rng);
            s[(i, j)] = v.clone();
            s[(j, i)] = -v;
        }
    }
    s
}
