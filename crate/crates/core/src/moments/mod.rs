//! The moment integrals `I_k(m;N)` and the tables built from them.

mod brute;
mod closed_form;
mod contingency;
mod haar;
mod lattice;
mod monte_carlo;
mod pk;
mod weyl;

pub use brute::{bruteforce_counts, ik_bruteforce};
pub use closed_form::{ik_closed_form, Branch};
pub use contingency::{compositions, contingency_count, ik_contingency};
pub use haar::{haar_sample_secular, HaarSample};
pub use lattice::{column_state_count, ik_lattice_dp, ik_lattice_dp_with, lattice_dp_counts, GTColumnState};
pub use monte_carlo::{ik_monte_carlo, secular_product_moment, Estimate, MixedMoment};
pub use pk::{binomial_poly, pk_closed_form, pk_numerator, poly8};
pub use weyl::ik_weyl_sum;

use num_traits::{One, Signed};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exact::{rat_int, BigInt, DensePoly};

/// `I_k(m;N)` for every `m = 0..=kN`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    k: u32,
    n: u32,
    values: Vec<BigInt>,
}

impl MomentTable {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, m: u32) -> Option<&BigInt> {
        self.values.get(m as usize)
    }

    /// Which closed-form branch (if any) covers entry `m`.
    pub fn branch(&self, m: u32) -> Branch {
        Branch::of(self.k, m, self.n)
    }

    /// `Σ_m I_k(m;N) x^m`.
    pub fn generating_polynomial(&self) -> DensePoly {
        DensePoly::from_coeffs(self.values.iter().cloned().map(rat_int).collect())
    }

    /// Check the structural invariants: palindromic, binomial for `m ≤ N`,
    /// unit endpoints, strictly positive.
    pub fn verify(&self) -> Result<()> {
        let kn = self.values.len() - 1;
        if kn != (self.k * self.n) as usize {
            return Err(Error::Verification("table length is not kN + 1".into()));
        }
        if !self.values[0].is_one() || !self.values[kn].is_one() {
            return Err(Error::Verification("I_k(0;N) and I_k(kN;N) must be 1".into()));
        }
        for m in 0..=kn {
            if !self.values[m].is_positive() {
                return Err(Error::Verification(format!("I_k({m};N) is not positive")));
            }
            if self.values[m] != self.values[kn - m] {
                return Err(Error::Verification(format!(
                    "functional equation fails at m = {m}"
                )));
            }
        }
        for m in 0..=self.n.min(kn as u32) {
            let closed = ik_closed_form(self.k, m, self.n)?.expect("low branch");
            if self.values[m as usize] != closed {
                return Err(Error::Verification(format!(
                    "I_k({m};N) differs from C(m+k²-1, k²-1)"
                )));
            }
        }
        Ok(())
    }
}

/// Moment table from the closed forms where they apply and the lattice DP
/// elsewhere.
pub fn moment_table(k: u32, n: u32) -> Result<MomentTable> {
    moment_table_with(k, n, &Budget::default())
}

pub fn moment_table_with(k: u32, n: u32, budget: &Budget) -> Result<MomentTable> {
    closed_form::check_range(k, 0, n)?;
    budget.check_kn(k, n)?;
    let kn = k * n;
    let needs_dp = (0..=kn).any(|m| Branch::of(k, m, n) == Branch::Middle);
    let dp = if needs_dp {
        Some(lattice_dp_counts(k, n, budget)?)
    } else {
        None
    };
    let values = (0..=kn)
        .map(|m| match ik_closed_form(k, m, n)? {
            Some(v) => Ok(v),
            None => Ok(dp.as_ref().expect("DP computed for middle range")[(kn - m) as usize].clone()),
        })
        .collect::<Result<Vec<_>>>()?;
    let table = MomentTable { k, n, values };
    table.verify()?;
    Ok(table)
}

/// `I_k(m;N)` by the cheapest exact route: closed form where it applies,
/// otherwise the Weyl-dimension sum.
pub fn ik_exact(k: u32, m: u32, n: u32) -> Result<BigInt> {
    match ik_closed_form(k, m, n)? {
        Some(v) => Ok(v),
        None => ik_weyl_sum(k, m, n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;

    #[test]
    fn k1_table() {
        let t = moment_table(1, 4).unwrap();
        assert_eq!(t.values(), &vec![BigInt::from(1); 5][..]);
    }

    #[test]
    fn k2_small_table() {
        let t = moment_table(2, 2).unwrap();
        let mid = ik_bruteforce(2, 2, 2).unwrap();
        let expect = [1.into(), 4.into(), mid, 4.into(), 1.into()];
        assert_eq!(t.values(), &expect[..]);
        assert_eq!(t.values()[1], binomial(4, 3).unwrap());
    }

    #[test]
    fn k2_n5_low_range() {
        let t = moment_table(2, 5).unwrap();
        for m in 0..=5 {
            assert_eq!(t.values()[m as usize], binomial(i64::from(m) + 3, 3).unwrap());
            assert_eq!(t.branch(m), Branch::Low);
        }
    }

    #[test]
    fn budget_error() {
        assert!(matches!(moment_table(4, 41), Err(Error::Budget(_))));
    }

    #[test]
    fn ik_exact_agrees_with_dp() {
        let t = moment_table(3, 7).unwrap();
        for m in 0..=21 {
            assert_eq!(&ik_exact(3, m, 7).unwrap(), t.get(m).unwrap());
        }
    }
}
