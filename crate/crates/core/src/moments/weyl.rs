//! `I_k(m;N)` as a sum of squared Weyl dimensions.
//!
//! Split the lattice array along its anti-diagonal chain `a_1 ≥ … ≥ a_k`.
//! The cells on either side form Gelfand–Tsetlin patterns with top row `a`
//! (the upper-left triangle directly, the lower-right one after `x ↦ N - x`),
//! and each side is counted by `dim(a) = Π_{i<j} (a_i - a_j + j - i)/(j - i)`.
//! Hence `I_k(m;N) = Σ dim(a)²` over `N ≥ a_1 ≥ … ≥ a_k ≥ 0` with
//! `Σ a = kN - m`.

use num_traits::Zero;

use crate::error::Result;
use crate::exact::BigInt;
use crate::moments::closed_form::check_range;

fn weyl_dimension_small(a: &[u32]) -> Option<u64> {
    let k = a.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        for j in i + 1..k {
            num = num.checked_mul(u128::from(a[i] - a[j]) + (j - i) as u128)?;
            den *= (j - i) as u128;
        }
    }
    u64::try_from(num / den).ok()
}

fn weyl_dimension(a: &[u32]) -> BigInt {
    let k = a.len();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let mut big: Option<BigInt> = None;
    for i in 0..k {
        for j in i + 1..k {
            let f = u128::from(a[i] - a[j]) + (j - i) as u128;
            den *= (j - i) as u128;
            match big.as_mut() {
                Some(b) => *b *= f,
                None => match num.checked_mul(f) {
                    Some(v) => num = v,
                    None => big = Some(BigInt::from(num) * f),
                },
            }
        }
    }
    match big {
        Some(b) => b / BigInt::from(den),
        None => BigInt::from(num / den),
    }
}

/// Sum of squares, kept in a machine word until it would overflow.
struct SquareSum {
    small: u128,
    big: BigInt,
}

impl SquareSum {
    fn add_small_square(&mut self, d: u64) {
        let sq = u128::from(d) * u128::from(d);
        match self.small.checked_add(sq) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(self.small);
                self.small = sq;
            }
        }
    }

    fn add_square(&mut self, d: BigInt) {
        self.big += &d * &d;
    }

    fn total(self) -> BigInt {
        self.big + BigInt::from(self.small)
    }
}

fn visit(prefix: &mut Vec<u32>, remaining: u32, slots: usize, cap: u32, acc: &mut SquareSum) {
    if slots == 0 {
        if remaining == 0 {
            match weyl_dimension_small(prefix) {
                Some(d) => acc.add_small_square(d),
                None => acc.add_square(weyl_dimension(prefix)),
            }
        }
        return;
    }
    let slots_u = slots as u64;
    let lo = (u64::from(remaining)).div_ceil(slots_u) as u32;
    let hi = cap.min(remaining);
    if lo > hi {
        return;
    }
    for a in lo..=hi {
        prefix.push(a);
        visit(prefix, remaining - a, slots - 1, a, acc);
        prefix.pop();
    }
}

/// `I_k(m;N)` by summing `dim(a)²` over bounded partitions of `kN - m`.
pub fn ik_weyl_sum(k: u32, m: u32, n: u32) -> Result<BigInt> {
    check_range(k, m, n)?;
    let mut acc = SquareSum {
        small: 0,
        big: BigInt::zero(),
    };
    let mut prefix = Vec::with_capacity(k as usize);
    visit(&mut prefix, k * n - m, k as usize, n, &mut acc);
    Ok(acc.total())
}
