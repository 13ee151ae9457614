//! The invariant `Q` of `n` matrices of size `2n x 2n`:
//!
//! ```text
//! Q(A_1..A_n) = sum_{s in S_2n} sgn(s) prod_i (A_i[s(2i-1), s(2i)] - A_i[s(2i), s(2i-1)])
//! ```
//!
//! It depends only on the skew parts `A_i - A_i^T`, is symmetric in its
//! arguments, and with all arguments equal gives `Q_n(A) = 2^n n! Pf(A - A^T)`.
//!
//! [`q_naive`] enumerates the permutation sum literally and is the oracle.
//! [`q_fast`] sums over perfect matchings instead, memoized on the set of
//! unmatched indices and the multiset of unused arguments.

mod matching;
mod naive;

#[cfg(test)]
mod tests;

pub use matching::pair_orientation_factor;

use crate::linalg::{LinalgError, Matrix, Scalar};
use crate::so::Representation;
use crate::words::{evaluate, Word, WordError};

/// Largest dimension `2n` the naive evaluator accepts (`10! ~ 3.6M` terms).
pub const NAIVE_MAX_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QError {
    #[error("Q needs at least one argument")]
    NoArguments,
    #[error("argument {index} is {rows}x{cols}; {count} arguments need {expected}x{expected}")]
    Shape {
        index: usize,
        rows: usize,
        cols: usize,
        count: usize,
        expected: usize,
    },
    #[error("naive evaluation is capped at dimension {NAIVE_MAX_DIM}, got {0}")]
    NaiveTooLarge(usize),
    #[error("dimension {0} exceeds the 64 indices the evaluator tracks")]
    TooLarge(usize),
    #[error("Q_n needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("k + l = {sum} does not match n = {n}")]
    CountMismatch { sum: i64, n: usize },
    #[error("representation of dimension {dim} needs {expected} words, got {got}")]
    WrongWordCount {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Checks the argument shapes and returns the skew parts.
fn skew_parts<T: Scalar>(args: &[Matrix<T>]) -> Result<Vec<Matrix<T>>, QError> {
    let n = args.len();
    if n == 0 {
        return Err(QError::NoArguments);
    }
    let expected = 2 * n;
    for (index, a) in args.iter().enumerate() {
        if a.rows() != expected || a.cols() != expected {
            return Err(QError::Shape {
                index,
                rows: a.rows(),
                cols: a.cols(),
                count: n,
                expected,
            });
        }
    }
    if expected > 64 {
        return Err(QError::TooLarge(expected));
    }
    args.iter()
        .map(|a| a.skew_part().map_err(QError::from))
        .collect()
}

/// Literal permutation-sum evaluation; `2n <= 10`.
pub fn q_naive<T: Scalar>(args: &[Matrix<T>]) -> Result<T, QError> {
    if args.len() * 2 > NAIVE_MAX_DIM {
        return Err(QError::NaiveTooLarge(args.len() * 2));
    }
    let skews = skew_parts(args)?;
    Ok(naive::signed_permutation_sum(&skews))
}

/// Matching-sum evaluation. Equal arguments share one memo branch.
pub fn q_fast<T: Scalar>(args: &[Matrix<T>]) -> Result<T, QError> {
    let skews = skew_parts(args)?;
    let mut kinds: Vec<Matrix<T>> = Vec::new();
    let mut counts: Vec<u32> = Vec::new();
    for s in skews {
        match kinds.iter().position(|k| *k == s) {
            Some(i) => counts[i] += 1,
            None => {
                kinds.push(s);
                counts.push(1);
            }
        }
    }
    let n = args.len() as u32;
    let sum = matching::matching_sum(&kinds, &counts);
    Ok(sum * T::from_i64(pair_orientation_factor(n) as i64))
}

/// `Q` with all `n` arguments equal to `a` (`a` is `2n x 2n`).
pub fn q_n<T: Scalar>(a: &Matrix<T>) -> Result<T, QError> {
    let d = a.dim()?;
    if d % 2 == 1 || d == 0 {
        return Err(QError::OddDimension(d));
    }
    q_fast(&vec![a.clone(); d / 2])
}

/// `Q` at `k` copies of `a` and `l` copies of `b`; zero when `k < 0` or `l < 0`.
pub fn q_kl<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>, k: i64, l: i64) -> Result<T, QError> {
    if k < 0 || l < 0 {
        return Ok(T::zero());
    }
    let d = a.dim()?;
    if d % 2 == 1 {
        return Err(QError::OddDimension(d));
    }
    if k + l != (d / 2) as i64 {
        return Err(QError::CountMismatch { sum: k + l, n: d / 2 });
    }
    let mut args = vec![a.clone(); k as usize];
    args.extend(std::iter::repeat_n(b.clone(), l as usize));
    q_fast(&args)
}

/// `Q(rho(w_1), ..., rho(w_n))` for a representation of dimension `2n`.
pub fn q_words<T: Scalar>(rep: &Representation<T>, ws: &[Word]) -> Result<T, QError> {
    let dim = rep.dim();
    if dim != 2 * ws.len() {
        return Err(QError::WrongWordCount {
            dim,
            expected: dim / 2,
            got: ws.len(),
        });
    }
    let asg = rep.assignment()?;
    let args = ws
        .iter()
        .map(|w| evaluate(w, &asg))
        .collect::<Result<Vec<_>, _>>()?;
    q_fast(&args)
}

/// Which evaluator produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QMode {
    Fast,
    Naive,
}

pub fn q_eval<T: Scalar>(args: &[Matrix<T>], mode: QMode) -> Result<T, QError> {
    match mode {
        QMode::Fast => q_fast(args),
        QMode::Naive => q_naive(args),
    }
}
