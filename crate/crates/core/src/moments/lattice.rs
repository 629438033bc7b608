//! Column-by-column dynamic program for the lattice-point count.
//!
//! The arrays counted are `k × k` integer matrices `x[r][c]` with entries in
//! `[0, N]`, rows weakly increasing left to right, columns weakly decreasing
//! top to bottom, and anti-diagonal sum `x[0][k-1] + x[1][k-2] + ... +
//! x[k-1][0] = kN - m`. A column is therefore a weakly decreasing vector;
//! consecutive columns must dominate componentwise.
//!
//! The DP keeps, for each column vector, the distribution of partial
//! anti-diagonal sums. The dominance transition `g(y) = Σ_{x ≤ y} f(x)` is
//! done in place as `k` one-axis prefix sums over the rank-ordered set of
//! decreasing vectors.

use std::ops::AddAssign;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::budget::Budget;
use crate::error::{ensure, Error, Result};
use crate::exact::{binomial_u128, BigInt};
use crate::moments::closed_form::check_range;

/// One column of the lattice array together with the anti-diagonal sum
/// accumulated over the columns to its left (inclusive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GTColumnState {
    column: Vec<u32>,
    partial_sum: u32,
}

impl GTColumnState {
    pub fn new(column: Vec<u32>, partial_sum: u32, n: u32) -> Result<Self> {
        ensure!(!column.is_empty(), "a column has at least one entry");
        ensure!(
            column.windows(2).all(|w| w[0] >= w[1]),
            "column entries must be weakly decreasing top to bottom: {column:?}"
        );
        ensure!(column[0] <= n, "column entries must lie in [0, N]");
        let k = column.len() as u64;
        ensure!(
            u64::from(partial_sum) <= k * u64::from(n),
            "partial anti-diagonal sum exceeds kN"
        );
        Ok(GTColumnState {
            column,
            partial_sum,
        })
    }

    pub fn column(&self) -> &[u32] {
        &self.column
    }

    pub fn partial_sum(&self) -> u32 {
        self.partial_sum
    }

    /// Whether `next` may follow this column (componentwise `≤`).
    pub fn precedes(&self, next: &GTColumnState) -> bool {
        self.column.len() == next.column.len()
            && self.column.iter().zip(&next.column).all(|(a, b)| a <= b)
    }
}

/// Number of weakly decreasing vectors of length `k` with entries in `[0, n]`.
pub fn column_state_count(k: u32, n: u32) -> u128 {
    binomial_u128(u64::from(n) + u64::from(k), u64::from(k))
}

/// The decreasing vectors in rank order.
///
/// With `w_i = v_i + (k - 1 - i)` strictly decreasing, the rank
/// `Σ_i C(w_i, k - i)` is the combinatorial number system index, so
/// `rank(v - e_i) = rank(v) - C(w_i - 1, k - i - 1)`.
struct ColumnSpace {
    k: usize,
    states: Vec<u32>,
    pascal: Vec<Vec<u64>>,
}

impl ColumnSpace {
    fn new(k: usize, n: u32) -> Self {
        let top = n as usize + k;
        let mut pascal = vec![vec![0u64; k + 1]; top + 1];
        for a in 0..=top {
            pascal[a][0] = 1;
            for b in 1..=k.min(a) {
                pascal[a][b] = pascal[a - 1][b - 1] + if b < a { pascal[a - 1][b] } else { 0 };
            }
        }
        let count = pascal[top][k] as usize;
        let mut states = vec![0u32; count * k];
        let mut v = vec![0u32; k];
        let mut filled = 0usize;
        loop {
            let r = Self::rank_with(&pascal, &v) as usize;
            states[r * k..(r + 1) * k].copy_from_slice(&v);
            filled += 1;
            // Next decreasing vector: bump the last position that can grow.
            let mut pos = k;
            while pos > 0 {
                let i = pos - 1;
                let cap = if i == 0 { n } else { v[i - 1] };
                if v[i] < cap {
                    v[i] += 1;
                    for x in v.iter_mut().skip(i + 1) {
                        *x = 0;
                    }
                    break;
                }
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
        }
        debug_assert_eq!(filled, count);
        ColumnSpace { k, states, pascal }
    }

    fn rank_with(pascal: &[Vec<u64>], v: &[u32]) -> u64 {
        let k = v.len();
        v.iter()
            .enumerate()
            .map(|(i, &x)| pascal[x as usize + k - 1 - i][k - i])
            .sum()
    }

    fn len(&self) -> usize {
        self.states.len() / self.k
    }

    fn state(&self, r: usize) -> &[u32] {
        &self.states[r * self.k..(r + 1) * self.k]
    }

    /// Rank of `v - e_axis` if that vector is still decreasing and
    /// non-negative.
    fn lower_neighbor(&self, r: usize, axis: usize) -> Option<usize> {
        let v = self.state(r);
        let k = self.k;
        let can = if axis + 1 < k {
            v[axis] > v[axis + 1]
        } else {
            v[axis] > 0
        };
        if !can {
            return None;
        }
        let w = v[axis] as usize + k - 1 - axis;
        Some(r - self.pascal[w - 1][k - axis - 1] as usize)
    }
}

trait Count: Clone + Zero + One + for<'a> AddAssign<&'a Self> + Send {
    fn into_bigint(self) -> BigInt;
}

impl Count for u128 {
    fn into_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Count for BigUint {
    fn into_bigint(self) -> BigInt {
        BigInt::from(self)
    }
}

fn run_dp<T: Count>(k: usize, n: u32) -> Vec<BigInt> {
    let space = ColumnSpace::new(k, n);
    let count = space.len();
    let total_len = k * n as usize + 1;
    let mut totals: Vec<T> = vec![T::zero(); total_len];

    // Column 0 contributes its bottom entry.
    let mut dist: Vec<Vec<T>> = (0..count)
        .map(|r| {
            let bottom = space.state(r)[k - 1] as usize;
            let mut d = vec![T::zero(); bottom + 1];
            d[bottom] = T::one();
            d
        })
        .collect();

    if k == 1 {
        for d in dist {
            for (s, c) in d.into_iter().enumerate() {
                totals[s] += &c;
            }
        }
        return totals.into_iter().map(Count::into_bigint).collect();
    }

    for col in 1..k {
        for axis in 0..k {
            for r in 0..count {
                if let Some(nb) = space.lower_neighbor(r, axis) {
                    let (lo, hi) = dist.split_at_mut(r);
                    for (acc, add) in hi[0].iter_mut().zip(lo[nb].iter()) {
                        *acc += add;
                    }
                }
            }
        }
        let row = k - 1 - col;
        if col + 1 == k {
            for (r, d) in dist.iter().enumerate() {
                let shift = space.state(r)[row] as usize;
                for (s, c) in d.iter().enumerate() {
                    totals[s + shift] += c;
                }
            }
        } else {
            for (r, d) in dist.iter_mut().enumerate() {
                let shift = space.state(r)[row] as usize;
                d.splice(0..0, std::iter::repeat_n(T::zero(), shift));
            }
        }
    }
    totals.into_iter().map(Count::into_bigint).collect()
}

/// All anti-diagonal sum counts: entry `s` is the number of arrays whose
/// anti-diagonal sums to `s`. `I_k(m;N)` is entry `kN - m`.
pub fn lattice_dp_counts(k: u32, n: u32, budget: &Budget) -> Result<Vec<BigInt>> {
    ensure!(k >= 1, "k must be at least 1 (got k = {k})");
    ensure!(n >= 1, "N must be at least 1 (got N = {n})");
    budget.check_kn(k, n)?;
    let states = column_state_count(k, n);
    if states > u128::from(budget.max_dp_states) {
        return Err(Error::Budget(format!(
            "lattice DP needs {states} column states, limit is {}",
            budget.max_dp_states
        )));
    }
    // Every partial count is bounded by (N+1)^(k^2).
    let bits = f64::from(k * k) * f64::from(n + 1).log2();
    let counts = if bits < 126.0 {
        run_dp::<u128>(k as usize, n)
    } else {
        run_dp::<BigUint>(k as usize, n)
    };
    Ok(counts)
}

/// `I_k(m;N)` as the number of lattice arrays with anti-diagonal `kN - m`.
pub fn ik_lattice_dp(k: u32, m: u32, n: u32) -> Result<BigInt> {
    ik_lattice_dp_with(k, m, n, &Budget::default())
}

pub fn ik_lattice_dp_with(k: u32, m: u32, n: u32, budget: &Budget) -> Result<BigInt> {
    check_range(k, m, n)?;
    let counts = lattice_dp_counts(k, n, budget)?;
    Ok(counts[(k * n - m) as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_order_is_consistent() {
        let space = ColumnSpace::new(3, 4);
        assert_eq!(space.len() as u128, column_state_count(3, 4));
        for r in 0..space.len() {
            let v = space.state(r);
            assert_eq!(ColumnSpace::rank_with(&space.pascal, v) as usize, r);
            for axis in 0..3 {
                if let Some(nb) = space.lower_neighbor(r, axis) {
                    let mut w = v.to_vec();
                    w[axis] -= 1;
                    assert_eq!(space.state(nb), &w[..]);
                }
            }
        }
    }

    #[test]
    fn small_tables() {
        let b = Budget::default();
        let t: Vec<BigInt> = [1, 4, 10, 20, 10, 4, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(lattice_dp_counts(2, 3, &b).unwrap(), t);
        let t: Vec<BigInt> = [1, 9, 45, 65, 45, 9, 1].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(lattice_dp_counts(3, 2, &b).unwrap(), t);
        assert_eq!(lattice_dp_counts(1, 4, &b).unwrap(), vec![BigInt::from(1); 5]);
    }

    #[test]
    fn examples() {
        assert_eq!(ik_lattice_dp(2, 3, 5).unwrap(), BigInt::from(20));
        assert_eq!(ik_lattice_dp(3, 11, 5).unwrap(), ik_lattice_dp(3, 4, 5).unwrap());
    }

    #[test]
    fn bigint_path_matches_u128_path() {
        let a = run_dp::<u128>(3, 5);
        let b = run_dp::<BigUint>(3, 5);
        assert_eq!(a, b);
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget {
            max_dp_states: 10,
            ..Budget::default()
        };
        assert!(matches!(lattice_dp_counts(3, 5, &tight), Err(Error::Budget(_))));
        assert!(matches!(lattice_dp_counts(4, 41, &Budget::default()), Err(Error::Budget(_))));
    }

    #[test]
    fn column_state_checks() {
        let a = GTColumnState::new(vec![3, 2, 0], 0, 3).unwrap();
        let b = GTColumnState::new(vec![3, 3, 1], 4, 3).unwrap();
        assert!(a.precedes(&b));
        assert!(!b.precedes(&a));
        assert!(GTColumnState::new(vec![1, 2], 0, 3).is_err());
        assert!(GTColumnState::new(vec![4, 2], 0, 3).is_err());
        assert!(GTColumnState::new(vec![3, 2], 7, 3).is_err());
    }
}
