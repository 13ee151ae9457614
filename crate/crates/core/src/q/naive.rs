//! Literal evaluation of the signed permutation sum, the reference oracle for
//! the fast evaluator.

use num_bigint::BigInt;

use crate::linalg::{Matrix, Scalar};

/// Ring operations the enumeration needs; `None` signals overflow.
trait SumRing: Clone {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    fn sub(&self, other: &Self) -> Option<Self>;
}

impl<T: Scalar> SumRing for T {
    fn zero() -> Self {
        <T as num_traits::Zero>::zero()
    }

    fn is_zero(&self) -> bool {
        <T as num_traits::Zero>::is_zero(self)
    }

    fn mul(&self, other: &Self) -> Option<Self> {
        Some(self.clone() * other.clone())
    }

    fn add(&self, other: &Self) -> Option<Self> {
        Some(self.clone() + other.clone())
    }

    fn sub(&self, other: &Self) -> Option<Self> {
        Some(self.clone() - other.clone())
    }
}

/// Gaussian integer with overflow-checked `i128` parts.
#[derive(Clone, Copy, Debug, PartialEq)]
struct GaussI128(i128, i128);

impl SumRing for GaussI128 {
    fn zero() -> Self {
        GaussI128(0, 0)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0 && self.1 == 0
    }

    fn mul(&self, o: &Self) -> Option<Self> {
        let re = self.0.checked_mul(o.0)?.checked_sub(self.1.checked_mul(o.1)?)?;
        let im = self.0.checked_mul(o.1)?.checked_add(self.1.checked_mul(o.0)?)?;
        Some(GaussI128(re, im))
    }

    fn add(&self, o: &Self) -> Option<Self> {
        Some(GaussI128(self.0.checked_add(o.0)?, self.1.checked_add(o.1)?))
    }

    fn sub(&self, o: &Self) -> Option<Self> {
        Some(GaussI128(self.0.checked_sub(o.0)?, self.1.checked_sub(o.1)?))
    }
}

/// `sum over sigma in S_{2n} of sgn(sigma) * prod_i S_i[sigma(2i-1), sigma(2i)]`
/// for the given skew matrices `S_1..S_n` (each `2n x 2n`).
///
/// Exact inputs are first scaled to Gaussian-integer matrices and summed in
/// checked `i128`; on overflow the sum is redone in the scalar type.
type IntegerScaled<T> = (T, Vec<(i128, i128)>);

pub(super) fn signed_permutation_sum<T: Scalar>(skews: &[Matrix<T>]) -> T {
    let d = 2 * skews.len();
    let scaled: Option<Vec<IntegerScaled<T>>> = skews
        .iter()
        .map(|s| T::integer_scaling(s.entries()))
        .collect();
    if let Some(scaled) = scaled {
        let ints: Vec<Vec<GaussI128>> = scaled
            .iter()
            .map(|(_, v)| v.iter().map(|&(re, im)| GaussI128(re, im)).collect())
            .collect();
        if let Some(sum) = enumerate(&ints, d) {
            let factor = scaled
                .into_iter()
                .fold(T::one(), |acc, (k, _)| acc * k);
            return T::from_gaussian_integer(&BigInt::from(sum.0), &BigInt::from(sum.1)) * factor;
        }
    }
    let entries: Vec<Vec<T>> = skews.iter().map(|s| s.entries().to_vec()).collect();
    enumerate(&entries, d).expect("scalar arithmetic does not overflow")
}

fn enumerate<R: SumRing>(slots: &[Vec<R>], d: usize) -> Option<R> {
    let mut acc = R::zero();
    
    visit(slots, d, 0, 0, 0, &None, &mut acc)?;
    Some(acc)
}

/// Depth-first over the values placed at positions `2*slot` and `2*slot + 1`.
/// `prefix == None` stands for the empty product.
fn visit<R: SumRing>(
    slots: &[Vec<R>],
    d: usize,
    slot: usize,
    used: u64,
    inversions: u32,
    prefix: &Option<R>,
    acc: &mut R,
) -> Option<()> {
    if slot == slots.len() {
        let term = prefix.clone()?;
        *acc = if inversions.is_multiple_of(2) {
            acc.add(&term)?
        } else {
            acc.sub(&term)?
        };
        return Some(());
    }
    let entries = &slots[slot];
    for x in 0..d {
        if used & (1 << x) != 0 {
            continue;
        }
        let used_x = used | (1 << x);
        let inv_x = (used & !((2u64 << x) - 1)).count_ones();
        for y in 0..d {
            if used_x & (1 << y) != 0 {
                continue;
            }
            let e = &entries[x * d + y];
            if e.is_zero() {
                continue;
            }
            let inv_y = (used_x & !((2u64 << y) - 1)).count_ones();
            let next = Some(match prefix {
                None => e.clone(),
                Some(p) => p.mul(e)?,
            });
            visit(
                slots,
                d,
                slot + 1,
                used_x | (1 << y),
                inversions + inv_x + inv_y,
                &next,
                acc,
            )?;
        }
    }
    Some(())
}
