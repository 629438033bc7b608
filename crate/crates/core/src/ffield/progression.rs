use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::character::{characters_mod, m_coefficient, phi};
use super::divisor::dk_table_with;
use super::poly::FqPoly;
use super::{ik_or_zero, Statistic, VarianceReport};
use crate::budget::Budget;
use crate::error::{ensure, Error, Result};
use crate::exact::Rational;

fn check(q: u32, modulus: &FqPoly, n: u32, k: u32) -> Result<u32> {
    ensure!(modulus.q() == q, "modulus is over F_{}, not F_{q}", modulus.q());
    ensure!(modulus.is_monic(), "the modulus must be monic (got {modulus})");
    let deg = modulus.degree().unwrap_or(0);
    ensure!(deg >= 2, "need deg Q >= 2 (got {deg})");
    ensure!(modulus.is_squarefree(), "the modulus must be squarefree (got {modulus})");
    ensure!(k >= 1, "k must be at least 1");
    ensure!(
        n <= k * (deg - 1),
        "need n <= k (deg Q - 1) = {} (got n = {n})",
        k * (deg - 1)
    );
    Ok(deg)
}

/// `(q^n / |Q|) I_k(n; deg Q - 1)`.
fn prediction(q: u32, n: u32, k: u32, deg: u32) -> Result<Rational> {
    let scale = Rational::new(BigInt::from(q).pow(n), BigInt::from(q).pow(deg));
    Ok(scale * Rational::from_integer(ik_or_zero(k, n, deg - 1)?))
}

/// Exact variance over `A` coprime to `Q` of `S(A) = Σ_{f ∈ M_n, f ≡ A} d_k(f)`.
pub fn ap_variance_direct(q: u32, modulus: &FqPoly, n: u32, k: u32) -> Result<VarianceReport> {
    ap_variance_direct_with(q, modulus, n, k, &Budget::default())
}

pub fn ap_variance_direct_with(
    q: u32,
    modulus: &FqPoly,
    n: u32,
    k: u32,
    budget: &Budget,
) -> Result<VarianceReport> {
    let deg = check(q, modulus, n, k)?;
    let residues = u64::from(q).pow(deg);
    ensure!(
        residues <= budget.max_ff_size,
        "q^deg Q = {residues} exceeds the enumeration limit"
    );
    let table = dk_table_with(q, n, k, budget)?;

    // t^i mod Q for i = 0..=n, as digit vectors of width deg Q
    let width = deg as usize;
    let powers: Vec<Vec<u64>> = (0..=n)
        .map(|i| {
            let mut c = vec![0u64; i as usize + 1];
            c[i as usize] = 1;
            let r = FqPoly::new(q, &c).map(|p| p.rem(modulus))?;
            Ok((0..width).map(|j| u64::from(r.coeff(j))).collect())
        })
        .collect::<Result<_>>()?;

    let mut sums = vec![0u128; residues as usize];
    let mut digits = vec![0u64; width];
    for (code, &dk) in table.degree_slice(n).iter().enumerate() {
        digits.copy_from_slice(&powers[n as usize]);
        let mut c = code as u64;
        for power in powers.iter().take(n as usize) {
            let coeff = c % u64::from(q);
            c /= u64::from(q);
            if coeff != 0 {
                for (d, p) in digits.iter_mut().zip(power) {
                    *d += coeff * p;
                }
            }
        }
        let r = digits
            .iter()
            .rev()
            .fold(0u64, |acc, &d| acc * u64::from(q) + d % u64::from(q));
        sums[r as usize] += u128::from(dk);
    }

    let mut count = 0u64;
    let mut total = BigInt::from(0);
    let mut squares = BigInt::from(0);
    for (code, &s) in sums.iter().enumerate() {
        let a = FqPoly::from_residue_code(q, deg, code as u64);
        if a.gcd(modulus).degree() != Some(0) {
            continue;
        }
        count += 1;
        let s = BigInt::from(s);
        squares += &s * &s;
        total += s;
    }
    let phi_q = phi(modulus)?;
    if count != phi_q {
        return Err(Error::Verification(format!(
            "found {count} units modulo {modulus}, expected Φ(Q) = {phi_q}"
        )));
    }
    let phi_big = BigInt::from(phi_q);
    let mean = Rational::new(total.clone(), phi_big.clone());
    let variance = Rational::new(&phi_big * squares - &total * &total, &phi_big * &phi_big);
    Ok(VarianceReport::new(
        q,
        n,
        k,
        Statistic::Progression { modulus: modulus.clone() },
        mean,
        variance,
        prediction(q, n, k, deg)?,
    ))
}

/// `Φ(Q)^{-2} Σ_{χ ≠ χ_0} |M(n; d_k χ)|²`, rounded to denominator `Φ(Q)²`.
pub fn ap_variance_characters(q: u32, modulus: &FqPoly, n: u32, k: u32) -> Result<Rational> {
    check(q, modulus, n, k)?;
    let chars = characters_mod(modulus)?;
    let mut acc = 0.0f64;
    for chi in chars.iter().filter(|c| !c.is_principal()) {
        acc += m_coefficient(chi, n, k)?.norm_sqr();
    }
    let rounded = acc.round();
    if (acc - rounded).abs() > 1e-6 * acc.max(1.0) {
        return Err(Error::Verification(format!(
            "Σ|M|² = {acc} is not within tolerance of an integer"
        )));
    }
    let numer = BigInt::from(rounded.to_u128().unwrap_or(0));
    let phi_q = BigInt::from(chars.len() as u64);
    Ok(Rational::new(numer, &phi_q * &phi_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn poly(q: u32, c: &[u64]) -> FqPoly {
        FqPoly::new(q, c).unwrap()
    }

    #[test]
    fn routes_agree() {
        for (q, m, n, k) in [
            (3, poly(3, &[1, 0, 1]), 2, 2),
            (3, poly(3, &[1, 0, 1]), 1, 2),
            (5, poly(5, &[0, 1, 1]), 2, 3),
            (3, poly(3, &[2, 1, 0, 1]), 4, 2),
            (5, poly(5, &[1, 1, 0, 1]), 3, 3),
        ] {
            let direct = ap_variance_direct(q, &m, n, k).unwrap();
            let chars = ap_variance_characters(q, &m, n, k).unwrap();
            assert_eq!(direct.variance(), &chars, "q={q} Q={m} n={n} k={k}");
        }
    }

    #[test]
    fn prediction_uses_the_moment() {
        // k = 2, n <= deg Q - 1: I_2(n; deg Q - 1) = C(n+3, 3)
        let m = poly(5, &[1, 1, 0, 1]);
        let r = ap_variance_direct(5, &m, 2, 2).unwrap();
        assert_eq!(r.prediction(), &(rat(25, 125) * rat(10, 1)));
    }

    #[test]
    fn mean_is_total_over_phi() {
        let m = poly(3, &[1, 0, 1]);
        let r = ap_variance_direct(3, &m, 2, 2).unwrap();
        // all 9 monic quadratics except t^2+1 are coprime to it
        let table = crate::ffield::dk_table(3, 2, 2).unwrap();
        let total: u64 = table.degree_slice(2).iter().sum::<u64>() - table.dk(&m).unwrap();
        assert_eq!(r.mean(), &rat(total as i64, 8));
    }

    #[test]
    fn preconditions() {
        assert!(ap_variance_direct(3, &poly(3, &[0, 0, 1]), 2, 2).is_err());
        assert!(ap_variance_direct(3, &poly(3, &[1, 1]), 1, 2).is_err());
        assert!(ap_variance_direct(3, &poly(3, &[1, 0, 1]), 3, 2).is_err());
        assert!(ap_variance_characters(3, &poly(3, &[1, 0, 1]), 3, 2).is_err());
    }
}
