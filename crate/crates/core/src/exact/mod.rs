//! Exact integer, rational and polynomial arithmetic.
//!
//! Big integers and rationals come from `num-bigint` / `num-rational`;
//! everything built on top of them (binomials, dense polynomials,
//! interpolation, truncated series) lives here.

mod interp;
mod poly;

pub use interp::lagrange_interpolate;
pub use poly::DensePoly;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational as Rational;

use num_traits::{One, Zero};

use crate::error::{ensure, Result};

/// Rational `num / den` from machine integers. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int<T: Into<BigInt>>(n: T) -> Rational {
    Rational::from_integer(n.into())
}

/// `C(n, r)`, zero when `r < 0` or `r > n`.
pub fn binomial(n: i64, r: i64) -> Result<BigInt> {
    ensure!(n >= 0, "binomial requires n >= 0, got n = {n}");
    if r < 0 || r > n {
        return Ok(BigInt::zero());
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

/// `C(n, r)` for small arguments where the result is known to fit.
pub(crate) fn binomial_u128(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// `n!` as a big integer.
pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Convert a rational to the nearest `f64`.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match r.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // Scale both parts down until they fit.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// `p/q` string form used in CSV output (integers print without a slash).
pub fn rational_string(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A float rounded to 12 significant digits, printed in shortest form.
pub fn float_string(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return format!("{x}");
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    format!("{rounded}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn float_formatting() {
        assert_eq!(float_string(1.0 / 3.0), "0.333333333333");
        assert_eq!(float_string(2.5), "2.5");
        assert_eq!(float_string(123456789012345.0), "123456789012000");
        assert_eq!(float_string(0.0), "0");
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(6, 3).unwrap(), BigInt::from(20));
        assert_eq!(binomial(5, 0).unwrap(), BigInt::from(1));
        assert_eq!(binomial(4, 7).unwrap(), BigInt::from(0));
        assert_eq!(binomial(4, -1).unwrap(), BigInt::from(0));
        assert!(binomial(-1, 0).is_err());
    }

    #[test]
    fn binomial_large() {
        // C(100, 50)
        let expected: BigInt = "100891344545564193334812497256".parse().unwrap();
        assert_eq!(binomial(100, 50).unwrap(), expected);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(rational_string(&rat(2, 4)), "1/2");
        assert_eq!(rational_string(&rat(-6, 3)), "-2");
        assert_eq!(rational_string(&rat(0, 5)), "0");
    }

    #[test]
    fn rationals_are_normalized() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(rat(2, 4), rat(1, 2));
    }

    proptest! {
        #[test]
        fn binomial_symmetry(n in 0i64..200, r in 0i64..200) {
            prop_assume!(r <= n);
            prop_assert_eq!(binomial(n, r).unwrap(), binomial(n, n - r).unwrap());
        }

        #[test]
        fn binomial_u128_agrees(n in 0u64..60, r in 0u64..60) {
            prop_assert_eq!(BigInt::from(binomial_u128(n, r)), binomial(n as i64, r as i64).unwrap());
        }
    }
}
