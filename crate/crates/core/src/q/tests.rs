use num_complex::Complex64;
use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::linalg::{gq, pfaffian, rat, GaussianRational, Matrix, Tolerance};
use crate::sample::{exact_matrix, exact_symmetric, float_matrix, rng};
use crate::so::{d_c, random_so, sigma_matrix};

fn m2(a: [[i64; 2]; 2]) -> Matrix<GaussianRational> {
    Matrix::from_fn(2, 2, |i, j| rat(a[i][j], 1))
}

#[test]
fn orientation_factor_matches_naive_at_small_n() {
    // Pins the constant relating matchings to permutations.
    let mut r = rng(11);
    for n in 1..=2usize {
        for _ in 0..20 {
            let args: Vec<_> = (0..n).map(|_| exact_matrix(&mut r, 2 * n)).collect();
            let skews: Vec<_> = args.iter().map(|a| a.skew_part().unwrap()).collect();
            let kinds_counts: (Vec<_>, Vec<_>) = (skews.clone(), vec![1; n]);
            let m = matching::matching_sum(&kinds_counts.0, &kinds_counts.1);
            let naive = q_naive(&args).unwrap();
            let factor = GaussianRational::from_i64(pair_orientation_factor(n as u32) as i64);
            assert_eq!(m * factor, naive);
        }
    }
    assert_eq!(pair_orientation_factor(1), 2);
    assert_eq!(pair_orientation_factor(2), 4);
}

#[test]
fn two_by_two_value() {
    // Q([[a11, a12], [a21, a22]]) = 2 (a12 - a21) from the defining sum.
    let a = m2([[3, 7], [2, -1]]);
    assert_eq!(q_naive(std::slice::from_ref(&a)).unwrap(), rat(10, 1));
    assert_eq!(q_fast(&[a]).unwrap(), rat(10, 1));
}

#[test]
fn d_c_value() {
    let c = rat(2, 1);
    let d = d_c(&c).unwrap();
    let expected = gq((0, 1), (3, 1));
    assert_eq!(q_naive(std::slice::from_ref(&d)).unwrap(), expected);
    assert_eq!(q_fast(&[d]).unwrap(), expected);
    assert_eq!(crate::so::d_c_q_value(&c), expected);
}

#[test]
fn identity_and_symmetric_arguments_vanish() {
    let mut r = rng(3);
    let id = Matrix::<GaussianRational>::identity(6);
    assert!(q_fast(&[id.clone(), id.clone(), id.clone()]).unwrap().is_zero());
    let s = exact_symmetric(&mut r, 6);
    let a = exact_matrix(&mut r, 6);
    let b = exact_matrix(&mut r, 6);
    assert!(q_naive(&[a.clone(), s.clone(), b.clone()]).unwrap().is_zero());
    assert!(q_fast(&[a, b, s]).unwrap().is_zero());
}

#[test]
fn q_n_is_scaled_pfaffian() {
    let mut r = rng(5);
    for n in 1..=3usize {
        let factor = rat((1i64 << n) * (1..=n as i64).product::<i64>(), 1);
        for _ in 0..5 {
            let a = exact_matrix(&mut r, 2 * n);
            let pf = pfaffian(&a.skew_part().unwrap()).unwrap();
            assert_eq!(q_n(&a).unwrap(), factor.clone() * pf);
        }
    }
}

#[test]
fn q_kl_conventions() {
    let mut r = rng(8);
    let a = exact_matrix(&mut r, 6);
    let b = exact_matrix(&mut r, 6);
    assert_eq!(q_kl(&a, &b, 3, 0).unwrap(), q_n(&a).unwrap());
    assert!(q_kl(&a, &b, -1, 4).unwrap().is_zero());
    assert!(matches!(q_kl(&a, &b, 1, 1), Err(QError::CountMismatch { .. })));
}

#[test]
fn sigma_negates_q_n() {
    let a: Matrix<GaussianRational> = random_so(6, 2).unwrap();
    let m = sigma_matrix(6);
    let conj = a.conjugate_by(&m, &m).unwrap();
    assert_eq!(q_n(&conj).unwrap(), -q_n(&a).unwrap());
}

#[test]
fn errors() {
    assert_eq!(q_fast::<GaussianRational>(&[]), Err(QError::NoArguments));
    let a = Matrix::<GaussianRational>::identity(4);
    assert!(matches!(q_fast(std::slice::from_ref(&a)), Err(QError::Shape { .. })));
    let big = Matrix::<GaussianRational>::identity(12);
    assert_eq!(
        q_naive(&vec![big; 6]),
        Err(QError::NaiveTooLarge(12))
    );
    assert!(matches!(q_n(&Matrix::<GaussianRational>::identity(3)), Err(QError::OddDimension(3))));
}

#[test]
fn float_backend_agrees_with_naive() {
    let mut r = rng(21);
    let args: Vec<Matrix<Complex64>> = (0..3).map(|_| float_matrix(&mut r, 6)).collect();
    let a = q_fast(&args).unwrap();
    let b = q_naive(&args).unwrap();
    assert!((a - b).norm() <= 1e-9 * (1.0 + b.norm()));
}

#[test]
fn naive_overflow_falls_back_to_exact() {
    // Entries with large denominators push the i128 scaling past its range.
    let big = rat(1, 1 << 40);
    let args: Vec<Matrix<GaussianRational>> = (0..4)
        .map(|k| Matrix::from_fn(8, 8, |i, j| big.clone() * rat((i * 8 + j + k) as i64 % 7 - 3, 3 + k as i64)))
        .collect();
    let tol = Tolerance::default();
    let _ = tol;
    assert_eq!(q_naive(&args).unwrap(), q_fast(&args).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fast_equals_naive(seed in any::<u64>(), n in 1usize..=3) {
        let mut r = rng(seed);
        let args: Vec<_> = (0..n).map(|_| exact_matrix(&mut r, 2 * n)).collect();
        prop_assert_eq!(q_fast(&args).unwrap(), q_naive(&args).unwrap());
    }

    #[test]
    fn symmetric_in_arguments(seed in any::<u64>()) {
        let mut r = rng(seed);
        let args: Vec<_> = (0..3).map(|_| exact_matrix(&mut r, 6)).collect();
        let rotated = vec![args[2].clone(), args[0].clone(), args[1].clone()];
        let swapped = vec![args[1].clone(), args[0].clone(), args[2].clone()];
        let v = q_fast(&args).unwrap();
        prop_assert_eq!(q_fast(&rotated).unwrap(), v.clone());
        prop_assert_eq!(q_fast(&swapped).unwrap(), v);
    }

    #[test]
    fn depends_only_on_skew_parts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let args: Vec<_> = (0..2).map(|_| exact_matrix(&mut r, 4)).collect();
        let shifted: Vec<_> = args
            .iter()
            .map(|a| a.add(&exact_symmetric(&mut r, 4)).unwrap())
            .collect();
        prop_assert_eq!(q_fast(&args).unwrap(), q_fast(&shifted).unwrap());
    }

    #[test]
    fn invariant_under_so_conjugation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let args: Vec<_> = (0..2).map(|_| exact_matrix(&mut r, 4)).collect();
        let g: Matrix<GaussianRational> = random_so(4, seed).unwrap();
        let gt = g.transpose();
        let conj: Vec<_> = args.iter().map(|a| a.conjugate_by(&g, &gt).unwrap()).collect();
        prop_assert_eq!(q_fast(&args).unwrap(), q_fast(&conj).unwrap());
    }
}
