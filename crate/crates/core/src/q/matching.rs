//! Signed sum over perfect matchings with an assignment of argument matrices
//! to matched pairs, memoized on (unmatched indices, unused multiset).

use std::collections::HashMap;

use crate::linalg::{Matrix, Scalar};

/// Each matched pair `{j, k}` occurs in the permutation sum in both orders with
/// equal contribution (the sign flip of the transposition cancels the sign
/// flip of the skew entry), so the permutation sum is `2^n` times the matching
/// sum.
pub const fn pair_orientation_factor(n: u32) -> u64 {
    1u64 << n
}

/// Sum over perfect matchings `M` of `{0..2n}` and bijections from argument
/// slots to the pairs of `M`, of `sgn(M) * prod S_slot[pair]`.
///
/// `kinds` are the distinct skew matrices and `counts` their multiplicities.
pub(super) fn matching_sum<T: Scalar>(kinds: &[Matrix<T>], counts: &[u32]) -> T {
    let d = kinds[0].rows();
    let mut strides = Vec::with_capacity(counts.len());
    let mut code = 0u64;
    let mut stride = 1u64;
    for &c in counts {
        strides.push(stride);
        code += stride * c as u64;
        stride *= c as u64 + 1;
    }
    let full = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
    let mut eval = Evaluator {
        kinds,
        strides,
        counts: counts.to_vec(),
        memo: HashMap::new(),
    };
    eval.go(full, code)
}

struct Evaluator<'a, T> {
    kinds: &'a [Matrix<T>],
    strides: Vec<u64>,
    counts: Vec<u32>,
    memo: HashMap<(u64, u64), T>,
}

impl<T: Scalar> Evaluator<'_, T> {
    fn go(&mut self, mask: u64, code: u64) -> T {
        if mask == 0 {
            return T::one();
        }
        if let Some(v) = self.memo.get(&(mask, code)) {
            return v.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << first);
        let mut acc = T::zero();
        let mut between = 0u32;
        let mut remaining = rest;
        while remaining != 0 {
            let partner = remaining.trailing_zeros() as usize;
            remaining &= remaining - 1;
            let sub_mask = rest & !(1u64 << partner);
            let mut inner = T::zero();
            for t in 0..self.kinds.len() {
                let available = self.counts[t];
                if available == 0 {
                    continue;
                }
                let entry = self.kinds[t][(first, partner)].clone();
                if entry.is_zero() {
                    continue;
                }
                self.counts[t] -= 1;
                let sub = self.go(sub_mask, code - self.strides[t]);
                self.counts[t] += 1;
                inner = inner + T::from_i64(available as i64) * entry * sub;
            }
            acc = if between.is_multiple_of(2) { acc + inner } else { acc - inner };
            between += 1;
        }
        self.memo.insert((mask, code), acc.clone());
        acc
    }
}
