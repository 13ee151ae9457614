use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::sample::{exact_matrix, exact_skew, float_matrix, gaussian_rational, rng};

#[test]
fn identity_is_neutral() {
    let mut r = rng(1);
    let a = exact_matrix(&mut r, 4);
    let id = Matrix::identity(4);
    assert_eq!(mat_mul(&id, &a).unwrap(), a);
    assert_eq!(mat_mul(&a, &id).unwrap(), a);
}

#[test]
fn inverse_round_trip() {
    let mut r = rng(2);
    let a = exact_matrix(&mut r, 5);
    let inv = inverse(&a).unwrap();
    assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(5));
    let z = Matrix::<GaussianRational>::zeros(3, 3);
    assert_eq!(inverse(&z), Err(LinalgError::Singular));
}

#[test]
fn small_determinants() {
    assert_eq!(determinant(&Matrix::<GaussianRational>::identity(6)).unwrap(), GaussianRational::one());
    let m = Matrix::diagonal(vec![rat(-1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
    assert_eq!(determinant(&m).unwrap(), rat(-1, 1));
    let m = Matrix::from_rows(vec![
        vec![rat(0, 1), rat(1, 1)],
        vec![rat(1, 1), rat(0, 1)],
    ])
    .unwrap();
    assert_eq!(determinant(&m).unwrap(), rat(-1, 1));
}

#[test]
fn float_determinant_matches_exact() {
    let mut r = rng(3);
    let a = exact_matrix(&mut r, 6);
    let exact = determinant(&a).unwrap().to_c64();
    let float = determinant(&a.to_c64()).unwrap();
    assert!((exact - float).norm() <= 1e-9 * exact.norm().max(1.0));
}

#[test]
fn pfaffian_examples() {
    let b = Matrix::from_rows(vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-1, 1), rat(0, 1)]]).unwrap();
    assert_eq!(pfaffian(&b).unwrap(), GaussianRational::one());
    assert!(pfaffian(&Matrix::<GaussianRational>::zeros(4, 4)).unwrap().is_zero());
    let mut r = rng(4);
    let s = exact_skew(&mut r, 6);
    let pf = pfaffian(&s).unwrap();
    assert_eq!(pf.clone() * pf, determinant(&s).unwrap());
    assert_eq!(pfaffian(&Matrix::<GaussianRational>::identity(2)), Err(LinalgError::NotSkewSymmetric));
    assert_eq!(pfaffian(&Matrix::<GaussianRational>::zeros(3, 3)), Err(LinalgError::OddDimension(3)));
}

#[test]
fn rank_and_kernel() {
    let t = Tolerance::default();
    assert_eq!(rank(&Matrix::<GaussianRational>::identity(5), &t), 5);
    let m = Matrix::from_rows(vec![
        vec![rat(1, 1), rat(2, 1), rat(3, 1)],
        vec![rat(1, 1), rat(2, 1), rat(3, 1)],
        vec![rat(0, 1), rat(1, 1), rat(5, 1)],
    ])
    .unwrap();
    assert_eq!(rank(&m, &t), 2);
    let k = nullspace(&m, &t);
    assert_eq!(k.len(), 1);
    assert!(m.apply(&k[0]).unwrap().iter().all(Zero::is_zero));
    let id = Matrix::<GaussianRational>::identity(4);
    assert_eq!(eigen_multiplicity(&id, &rat(1, 1), &t).unwrap(), 4);
    assert_eq!(eigen_multiplicity(&id, &rat(2, 1), &t).unwrap(), 0);
    let rect = Matrix::from_fn(2, 5, |i, j| rat((i + j) as i64, 1));
    assert_eq!(rank(&rect, &t) + kernel_dimension(&rect, &t), 5);
}

#[test]
fn float_rank_ignores_roundoff() {
    let t = Tolerance::default();
    let mut r = rng(5);
    let a = float_matrix(&mut r, 4);
    let mut rows: Vec<Vec<Complex64>> = (0..4).map(|i| a.row(i).to_vec()).collect();
    rows[3] = rows[0].iter().zip(&rows[1]).map(|(x, y)| x * 0.3 + y * (1.0 / 3.0)).collect();
    assert_eq!(rank(&Matrix::from_rows(rows).unwrap(), &t), 3);
}

#[test]
fn special_orthogonal_membership() {
    let t = Tolerance::default();
    assert!(is_special_orthogonal(&Matrix::<GaussianRational>::identity(4), Form::Standard, &t));
    let m = Matrix::diagonal(vec![rat(-1, 1), rat(1, 1), rat(1, 1)]);
    assert!(!is_special_orthogonal(&m, Form::Standard, &t));
    let c = rat(2, 1);
    let diag = Matrix::diagonal(vec![c.clone(), GaussianRational::one() / c]);
    assert!(is_special_orthogonal(&diag, Form::J, &t));
    assert!(!is_special_orthogonal(&diag, Form::Standard, &t));
    assert_eq!(orthogonal_inverse(&diag, Form::J).unwrap(), inverse(&diag).unwrap());
}

#[test]
fn block_diag_assembly() {
    let i2 = Matrix::<GaussianRational>::identity(2);
    assert_eq!(block_diag(&[i2.clone(), i2]).unwrap(), Matrix::identity(4));
    let a = Matrix::from_fn(2, 2, |i, j| rat((i * 2 + j) as i64, 1));
    let b = Matrix::from_fn(1, 1, |_, _| rat(7, 1));
    let m = block_diag(&[a.clone(), b]).unwrap();
    assert_eq!(m.block(0, 2), a);
    assert_eq!(m[(2, 2)], rat(7, 1));
    assert!(m[(0, 2)].is_zero());
}

#[test]
fn shape_errors() {
    let a = Matrix::<GaussianRational>::identity(2);
    let b = Matrix::<GaussianRational>::identity(3);
    assert!(matches!(a.mul(&b), Err(LinalgError::DimensionMismatch { .. })));
    let rect = Matrix::<GaussianRational>::zeros(2, 3);
    assert!(matches!(determinant(&rect), Err(LinalgError::NotSquare { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        for _ in 0..30 {
            let (a, b, c) = (gaussian_rational(&mut r), gaussian_rational(&mut r), gaussian_rational(&mut r));
            prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() * b.clone(), b * a);
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant(seed in any::<u64>(), half in 1usize..=4) {
        let mut r = rng(seed);
        let s = exact_skew(&mut r, 2 * half);
        let pf = pfaffian(&s).unwrap();
        prop_assert_eq!(pf.clone() * pf, determinant(&s).unwrap());
    }

    #[test]
    fn rank_nullity(seed in any::<u64>(), rows in 1usize..6, cols in 1usize..7) {
        let mut r = rng(seed);
        let t = Tolerance::default();
        let m = Matrix::from_fn(rows, cols, |_, _| {
            if rand::Rng::gen_bool(&mut r, 0.5) { gaussian_rational(&mut r) } else { GaussianRational::zero() }
        });
        prop_assert_eq!(rank(&m, &t) + kernel_dimension(&m, &t), cols);
        for v in nullspace(&m, &t) {
            prop_assert!(m.apply(&v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn so_membership_is_conjugation_stable(seed in any::<u64>()) {
        let t = Tolerance::default();
        let a: Matrix<Complex64> = crate::so::random_so(5, seed).unwrap();
        let g: Matrix<Complex64> = crate::so::random_so(5, seed ^ 0x55).unwrap();
        let conj = a.conjugate_by(&g, &g.transpose()).unwrap();
        prop_assert!(is_special_orthogonal(&conj, Form::Standard, &t));
    }
}
