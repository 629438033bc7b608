use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rat_int, to_f64, Rational};
use crate::error::{ensure, Result};

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` is the coefficient of `x^i`. The last stored coefficient is
/// nonzero; the zero polynomial stores no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePoly {
    coeffs: Vec<Rational>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: Rational, power: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    /// Build from integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `p(a + b x)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let lin = Self::from_coeffs(vec![a.clone(), b.clone()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &lin) + &Self::constant(c.clone())
        })
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rat_int(i as i64 + 1));
        }
        Self::from_coeffs(coeffs)
    }

    /// `∫_a^b p(x) dx`.
    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    /// Keep only the coefficients of `x^0 .. x^(order-1)`.
    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(order).cloned().collect())
    }

    /// The power series `q` with `p * q ≡ 1 (mod x^order)`.
    pub fn series_truncated_inverse(&self, order: usize) -> Result<Self> {
        let c0 = self.coeff(0);
        ensure!(
            !c0.is_zero(),
            "series inverse needs a nonzero constant term"
        );
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(order);
        for n in 0..order {
            if n == 0 {
                out.push(inv0.clone());
                continue;
            }
            let mut acc = Rational::zero();
            for i in 1..=n.min(self.coeffs.len().saturating_sub(1)) {
                acc += &self.coeffs[i] * &out[n - i];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self::from_coeffs(out))
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(out)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{binomial, rat};
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        let sq = DensePoly::from_ints(&[0, 0, 1]);
        assert_eq!(sq.eval(&rat(3, 2)), rat(9, 4));
        assert_eq!(DensePoly::zero().eval(&rat(7, 3)), rat(0, 1));
        assert_eq!(DensePoly::zero().degree(), None);
    }

    #[test]
    fn product_and_sum() {
        let a = DensePoly::from_ints(&[1, 1]);
        let b = DensePoly::from_ints(&[1, -1]);
        assert_eq!(&a * &b, DensePoly::from_ints(&[1, 0, -1]));
        assert_eq!(&a + &b, DensePoly::from_ints(&[2]));
        assert_eq!(&a - &a, DensePoly::zero());
    }

    #[test]
    fn geometric_series() {
        let p = DensePoly::from_ints(&[1, -1]);
        let inv = p.series_truncated_inverse(4).unwrap();
        assert_eq!(inv, DensePoly::from_ints(&[1, 1, 1, 1]));
        assert!(DensePoly::from_ints(&[0, 1]).series_truncated_inverse(3).is_err());
    }

    #[test]
    fn negative_binomial_expansion() {
        let p = DensePoly::from_ints(&[1, -1]).pow(4);
        let inv = p.series_truncated_inverse(30).unwrap();
        for m in 0..30 {
            assert_eq!(inv.coeff(m), rat_int(binomial(m as i64 + 3, 3).unwrap()));
        }
    }

    #[test]
    fn compose_and_integrate() {
        // (2 - c)^3 from c^3 by c -> 2 - c
        let cube = DensePoly::monomial(rat(1, 1), 3);
        let reflected = cube.compose_affine(&rat(2, 1), &rat(-1, 1));
        assert_eq!(reflected, DensePoly::from_ints(&[8, -12, 6, -1]));
        assert_eq!(cube.integrate(&rat(0, 1), &rat(1, 1)), rat(1, 4));
        assert_eq!(cube.derivative(), DensePoly::from_ints(&[0, 0, 3]));
    }

    fn small_poly() -> impl Strategy<Value = DensePoly> {
        proptest::collection::vec(-20i64..20, 1..6).prop_map(|v| DensePoly::from_ints(&v))
    }

    proptest! {
        #[test]
        fn inverse_times_p_is_one(mut v in proptest::collection::vec(-9i64..9, 1..6), order in 1usize..12) {
            if v[0] == 0 { v[0] = 1; }
            let p = DensePoly::from_ints(&v);
            let inv = p.series_truncated_inverse(order).unwrap();
            prop_assert_eq!((&p * &inv).truncate(order), DensePoly::one());
        }

        #[test]
        fn eval_is_ring_homomorphism(a in small_poly(), b in small_poly(), n in -5i64..5, d in 1i64..5) {
            let x = rat(n, d);
            prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        }
    }
}
