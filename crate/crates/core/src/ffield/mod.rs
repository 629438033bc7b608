//! Divisor-function statistics over `F_q[t]` by exact enumeration.
//!
//! Short-interval and progression variances of `d_k` are computed from a
//! full table of `d_k` on monic polynomials and compared with the
//! matrix-integral predictions `H·I_k(n; n-h-2)` and
//! `(q^n/|Q|)·I_k(n; deg Q - 1)`. Progression variances are also computed
//! through Dirichlet characters and their `L`-functions.

mod character;
mod divisor;
mod poly;
mod progression;
mod short;

pub use character::{
    characters_mod, even_character_count_prime_power, l_function, m_coefficient,
    m_coefficient_direct, phi, DirichletCharacter,
};
pub use divisor::{dk_table, dk_table_with, DivisorTable};
pub use poly::{is_prime, FqPoly};
pub use progression::{ap_variance_characters, ap_variance_direct, ap_variance_direct_with};
pub use short::{
    short_interval_sum, short_interval_variance, short_interval_variance_from,
    short_interval_variance_with,
};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::exact::{float_string, to_f64, Rational};
use crate::moments::ik_exact;

/// Which statistic a [`VarianceReport`] describes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statistic {
    ShortInterval { h: u32 },
    Progression { modulus: FqPoly },
}

/// An exact variance next to its matrix-integral prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct VarianceReport {
    q: u32,
    n: u32,
    k: u32,
    statistic: Statistic,
    mean: Rational,
    variance: Rational,
    prediction: Rational,
}

impl VarianceReport {
    pub(crate) fn new(
        q: u32,
        n: u32,
        k: u32,
        statistic: Statistic,
        mean: Rational,
        variance: Rational,
        prediction: Rational,
    ) -> Self {
        VarianceReport { q, n, k, statistic, mean, variance, prediction }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn statistic(&self) -> &Statistic {
        &self.statistic
    }

    pub fn mean(&self) -> &Rational {
        &self.mean
    }

    pub fn variance(&self) -> &Rational {
        &self.variance
    }

    pub fn prediction(&self) -> &Rational {
        &self.prediction
    }

    /// `Var / prediction`; `None` when the prediction is zero.
    pub fn ratio(&self) -> Option<f64> {
        (!self.prediction.is_zero()).then(|| to_f64(&(&self.variance / &self.prediction)))
    }

    /// Both zero gives `"exact-zero"`.
    pub fn ratio_label(&self) -> String {
        match self.ratio() {
            Some(r) => float_string(r),
            None if self.variance.is_zero() => "exact-zero".into(),
            None => "undefined".into(),
        }
    }
}

/// `I_k(m;N)` extended by zero outside `0 ≤ m ≤ kN`, with `I_k(0;0) = 1`.
pub(crate) fn ik_or_zero(k: u32, m: u32, n: u32) -> Result<BigInt> {
    if m > k * n {
        return Ok(BigInt::zero());
    }
    if n == 0 {
        return Ok(BigInt::from(1));
    }
    ik_exact(k, m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ik_extension() {
        assert_eq!(ik_or_zero(2, 0, 0).unwrap(), BigInt::from(1));
        assert_eq!(ik_or_zero(2, 3, 0).unwrap(), BigInt::from(0));
        assert_eq!(ik_or_zero(2, 7, 3).unwrap(), BigInt::from(0));
        assert_eq!(ik_or_zero(2, 7, 5).unwrap(), BigInt::from(20));
    }
}
