use std::collections::HashMap;

use super::matrix::Matrix;
use super::scalar::{Scalar, Tolerance};
use super::LinalgError;

/// Pfaffian of a skew-symmetric matrix by expansion along the first remaining
/// row, memoized on the set of remaining indices. Equivalent to the signed sum
/// over perfect matchings; `Pf(b)^2 = det(b)`.
pub fn pfaffian<T: Scalar>(b: &Matrix<T>) -> Result<T, LinalgError> {
    pfaffian_with(b, &Tolerance::default())
}

pub fn pfaffian_with<T: Scalar>(b: &Matrix<T>, tol: &Tolerance) -> Result<T, LinalgError> {
    let d = b.dim()?;
    if d % 2 == 1 {
        return Err(LinalgError::OddDimension(d));
    }
    if d > 64 {
        return Err(LinalgError::Shape(format!("pfaffian supports d <= 64, got {d}")));
    }
    if !b.is_skew_symmetric(tol) {
        return Err(LinalgError::NotSkewSymmetric);
    }
    let full = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut memo = HashMap::new();
    Ok(expand(b, full, &mut memo))
}

fn expand<T: Scalar>(b: &Matrix<T>, mask: u64, memo: &mut HashMap<u64, T>) -> T {
    if mask == 0 {
        return T::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1u64 << first);
    let mut acc = T::zero();
    let mut between = 0u32;
    let mut remaining = rest;
    while remaining != 0 {
        let j = remaining.trailing_zeros() as usize;
        remaining &= remaining - 1;
        let entry = &b[(first, j)];
        if !entry.is_zero() {
            let sub = expand(b, rest & !(1u64 << j), memo);
            let term = entry.clone() * sub;
            acc = if between.is_multiple_of(2) { acc + term } else { acc - term };
        }
        between += 1;
    }
    memo.insert(mask, acc.clone());
    acc
}
