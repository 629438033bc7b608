use num_bigint::BigInt;
use rayon::prelude::*;

use super::divisor::{dk_table_with, DivisorTable};
use super::poly::FqPoly;
use super::{ik_or_zero, Statistic, VarianceReport};
use crate::budget::Budget;
use crate::error::{ensure, Error, Result};
use crate::exact::{binomial_u128, Rational};

fn check_h(n: u32, h: u32) -> Result<()> {
    ensure!(n >= 2, "short intervals need n >= 2 (got n = {n})");
    ensure!(h + 2 <= n, "need 0 <= h <= n - 2 (got h = {h}, n = {n})");
    Ok(())
}

/// `N(A;h) = Σ_{|f - A| ≤ q^h} d_k(f)` over monic `f` of degree `n`.
pub fn short_interval_sum(table: &DivisorTable, a: &FqPoly, h: u32) -> Result<BigInt> {
    let n = table.n();
    check_h(n, h)?;
    ensure!(
        a.is_monic() && a.degree() == Some(n),
        "A must be monic of degree n = {n} (got {a})"
    );
    let block = u64::from(table.q()).pow(h + 1);
    let code = a.monic_code().unwrap_or(0);
    let start = (code - code % block) as usize;
    let slice = &table.degree_slice(n)[start..start + block as usize];
    Ok(slice.iter().map(|&v| u128::from(v)).sum::<u128>().into())
}

/// Exact variance of `N(A;h)` over all monic `A` of degree `n`.
pub fn short_interval_variance(q: u32, n: u32, h: u32, k: u32) -> Result<VarianceReport> {
    short_interval_variance_with(q, n, h, k, &Budget::default())
}

pub fn short_interval_variance_with(
    q: u32,
    n: u32,
    h: u32,
    k: u32,
    budget: &Budget,
) -> Result<VarianceReport> {
    check_h(n, h)?;
    let table = dk_table_with(q, n, k, budget)?;
    short_interval_variance_from(&table, h)
}

/// Same as [`short_interval_variance`] on a prebuilt table.
pub fn short_interval_variance_from(table: &DivisorTable, h: u32) -> Result<VarianceReport> {
    let (q, n, k) = (table.q(), table.n(), table.k());
    check_h(n, h)?;
    let big_h = u64::from(q).pow(h + 1);
    let values = table.degree_slice(n);
    let blocks = (values.len() as u64 / big_h) as i128;
    let sums: Vec<i128> = values
        .par_chunks(big_h as usize)
        .map(|c| c.iter().map(|&v| i128::from(v)).sum())
        .collect();
    let total: i128 = sums.iter().sum();
    let expected_mean =
        i128::from(big_h) * binomial_u128(u64::from(n + k - 1), u64::from(k - 1)) as i128;
    if total % blocks != 0 || total / blocks != expected_mean {
        return Err(Error::Verification(format!(
            "mean of N(A;h) is {total}/{blocks}, expected q^(h+1) C(n+k-1,k-1) = {expected_mean}"
        )));
    }
    let squares = sums
        .par_iter()
        .map(|&s| {
            let dev = s - expected_mean;
            dev.checked_mul(dev)
        })
        .try_reduce(|| 0i128, |a, b| a.checked_add(b))
        .ok_or_else(|| Error::Budget("variance accumulator overflowed 128 bits".into()))?;
    let variance = Rational::new(BigInt::from(squares), BigInt::from(blocks));
    let prediction = Rational::from_integer(BigInt::from(big_h) * ik_or_zero(k, n, n - h - 2)?);
    Ok(VarianceReport::new(
        q,
        n,
        k,
        Statistic::ShortInterval { h },
        Rational::from_integer(expected_mean.into()),
        variance,
        prediction,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::dk_table;
    use num_traits::Zero;

    #[test]
    fn interval_has_h_elements() {
        let table = dk_table(3, 4, 2).unwrap();
        let a = FqPoly::from_monic_code(3, 4, 40);
        let sum = short_interval_sum(&table, &a, 1).unwrap();
        let block: Vec<u64> = (36..45).map(|c| table.dk_code(4, c)).collect();
        assert_eq!(sum, BigInt::from(block.iter().sum::<u64>()));
        assert!(short_interval_sum(&table, &a, 3).is_err());
    }

    #[test]
    fn constant_above_half() {
        let table = dk_table(3, 4, 2).unwrap();
        let first = short_interval_sum(&table, &FqPoly::from_monic_code(3, 4, 0), 2).unwrap();
        for code in 0..81 {
            let a = FqPoly::from_monic_code(3, 4, code);
            assert_eq!(short_interval_sum(&table, &a, 2).unwrap(), first);
        }
        let r = short_interval_variance(3, 4, 2, 2).unwrap();
        assert!(r.variance().is_zero());
        assert_eq!(r.ratio_label(), "exact-zero");
    }

    #[test]
    fn report_fields() {
        let r = short_interval_variance(5, 5, 0, 2).unwrap();
        assert_eq!(r.mean(), &Rational::from_integer(30.into()));
        // H * I_2(5; 3) = 5 * 4
        assert_eq!(r.prediction(), &Rational::from_integer(20.into()));
        assert!(r.ratio().unwrap() > 0.0);
    }
}
