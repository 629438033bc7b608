//! The Euler-product constant `a_k` and the heuristic variance predictors
//! for short intervals and arithmetic progressions over the integers.

use num_traits::{One, Signed};

use super::{gamma_at_rational, gamma_full_cached};
use crate::error::{ensure, Error, Result};
use crate::exact::Rational;

pub const DEFAULT_PRIME_CUTOFF: u64 = 10_000;

/// Primes `≤ limit` (sieve of Eratosthenes).
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// `(1 - 1/p)^{(k-1)²} Σ_{j=0}^{k-1} C(k-1, j)² p^{-j}`.
pub fn local_factor_finite(k: u32, p: u64) -> f64 {
    let x = 1.0 / p as f64;
    let mut sum = 0.0;
    let mut binom = 1.0f64;
    for j in 0..k {
        sum += binom * binom * x.powi(j as i32);
        binom = binom * f64::from(k - 1 - j) / f64::from(j + 1);
    }
    (1.0 - x).powi(((k - 1) * (k - 1)) as i32) * sum
}

/// `(1 - 1/p)^{k²} Σ_{j≥0} (Γ(k+j)/(Γ(k) j!))² p^{-j}`, summed until the
/// terms stop contributing in double precision.
pub fn local_factor_series(k: u32, p: u64) -> f64 {
    let x = 1.0 / p as f64;
    let mut sum = 0.0;
    // coefficient C(k-1+j, j)
    let mut coeff = 1.0f64;
    let mut xp = 1.0f64;
    let mut j = 0u32;
    loop {
        let term = coeff * coeff * xp;
        sum += term;
        if j > 2 * k && term < sum * 1e-18 {
            break;
        }
        coeff = coeff * f64::from(k + j) / f64::from(j + 1);
        xp *= x;
        j += 1;
    }
    (1.0 - x).powi((k * k) as i32) * sum
}

/// Truncated Euler product for `a_k` over primes `p ≤ prime_cutoff`.
///
/// Both closed forms of the local factor are computed and must agree to
/// `1e-12` relative at every prime.
pub fn a_k_constant(k: u32, prime_cutoff: u64) -> Result<f64> {
    ensure!(k >= 1, "k must be at least 1");
    ensure!(prime_cutoff >= 2, "the prime cutoff must be at least 2 (got {prime_cutoff})");
    let mut acc = 1.0f64;
    for p in primes_up_to(prime_cutoff) {
        let finite = local_factor_finite(k, p);
        let series = local_factor_series(k, p);
        if ((finite - series) / finite).abs() > 1e-12 {
            return Err(Error::Verification(format!(
                "local factors of a_{k} disagree at p = {p}: {finite} vs {series}"
            )));
        }
        acc *= finite;
    }
    Ok(acc)
}

/// `𝒫_k(δ) = (1-δ)^{k²-1} γ_k(1/(1-δ))`, exactly.
pub fn script_p(k: u32, delta: &Rational) -> Result<Rational> {
    ensure!(k >= 2, "𝒫_k needs k >= 2");
    let upper = Rational::one() - Rational::new(1.into(), k.into());
    ensure!(
        delta.is_positive() && *delta < upper,
        "δ must satisfy 0 < δ < 1 - 1/k (got δ = {delta}, k = {k})"
    );
    let one_minus = Rational::one() - delta;
    let c = one_minus.recip();
    let g = gamma_at_rational(k, &c)?;
    Ok(pow_rational(&one_minus, k * k - 1) * g)
}

fn pow_rational(r: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * r)
}

/// Which integer-side statistic a prediction is for.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConjectureMode {
    /// Short intervals `[x, x + H]`, `H = X^δ`.
    ShortInterval { delta: f64 },
    /// Progressions modulo a prime of size `modulus`.
    Progression { modulus: f64 },
}

/// Parameters of an integer-side variance prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjectureInput {
    pub k: u32,
    pub x: f64,
    pub mode: ConjectureMode,
    pub prime_cutoff: u64,
    /// Margin for the progression range `Q^{1+ε} ≤ X ≤ Q^{k-ε}`.
    pub epsilon: f64,
}

impl ConjectureInput {
    pub fn short_interval(k: u32, x: f64, delta: f64) -> Self {
        ConjectureInput {
            k,
            x,
            mode: ConjectureMode::ShortInterval { delta },
            prime_cutoff: DEFAULT_PRIME_CUTOFF,
            epsilon: 0.01,
        }
    }

    pub fn progression(k: u32, x: f64, modulus: f64) -> Self {
        ConjectureInput {
            k,
            x,
            mode: ConjectureMode::Progression { modulus },
            prime_cutoff: DEFAULT_PRIME_CUTOFF,
            epsilon: 0.01,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.k >= 2, "predictions need k >= 2 (got k = {})", self.k);
        ensure!(self.x > 1.0, "X must exceed 1 (got X = {})", self.x);
        match self.mode {
            ConjectureMode::ShortInterval { delta } => {
                let upper = 1.0 - 1.0 / f64::from(self.k);
                ensure!(
                    delta > 0.0 && delta < upper,
                    "δ must satisfy 0 < δ < 1 - 1/k = {upper} (got δ = {delta})"
                );
            }
            ConjectureMode::Progression { modulus } => {
                ensure!(modulus > 1.0, "Q must exceed 1 (got Q = {modulus})");
                let c = self.x.ln() / modulus.ln();
                let lo = 1.0 + self.epsilon;
                let hi = f64::from(self.k) - self.epsilon;
                ensure!(
                    c >= lo && c <= hi,
                    "need Q^(1+ε) <= X <= Q^(k-ε), i.e. {lo} <= log X / log Q <= {hi} (got {c})"
                );
            }
        }
        Ok(())
    }
}

/// A heuristic prediction with every factor itemized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub a_k: f64,
    /// `𝒫_k(δ)` for short intervals, `γ_k(log X / log Q)` for progressions.
    pub shape: f64,
    /// `H = X^δ`, or `X/Q`.
    pub scale: f64,
    /// `(log X)^{k²-1}`, or `(log Q)^{k²-1}`.
    pub log_power: f64,
    pub value: f64,
}

/// Prediction of `(1/X)∫_X^{2X} Δ_k(x,H)² dx` from `a_k 𝒫_k(δ) H (log X)^{k²-1}`.
pub fn predict_variance_si(input: &ConjectureInput) -> Result<Prediction> {
    input.validate()?;
    let ConjectureMode::ShortInterval { delta } = input.mode else {
        return Err(Error::Precondition("short-interval prediction needs δ".into()));
    };
    let k = input.k;
    let gamma = gamma_full_cached(k)?;
    let shape = (1.0 - delta).powi((k * k - 1) as i32) * gamma.eval_f64(1.0 / (1.0 - delta));
    let a_k = a_k_constant(k, input.prime_cutoff)?;
    let scale = input.x.powf(delta);
    let log_power = input.x.ln().powi((k * k - 1) as i32);
    Ok(Prediction {
        a_k,
        shape,
        scale,
        log_power,
        value: a_k * shape * scale * log_power,
    })
}

/// Prediction of the progression variance from
/// `(X/Q) a_k γ_k(log X / log Q) (log Q)^{k²-1}`.
pub fn predict_variance_ap(input: &ConjectureInput) -> Result<Prediction> {
    input.validate()?;
    let ConjectureMode::Progression { modulus } = input.mode else {
        return Err(Error::Precondition("progression prediction needs Q".into()));
    };
    let k = input.k;
    let gamma = gamma_full_cached(k)?;
    let c = input.x.ln() / modulus.ln();
    let shape = gamma.eval_f64(c);
    let a_k = a_k_constant(k, input.prime_cutoff)?;
    let scale = input.x / modulus;
    let log_power = modulus.ln().powi((k * k - 1) as i32);
    Ok(Prediction {
        a_k,
        shape,
        scale,
        log_power,
        value: a_k * shape * scale * log_power,
    })
}

/// `(k^{k²-1}/(k²-1)!) (1 - 1/k - δ)^{k²-1}`, the simplified form of
/// `𝒫_k(δ)` for `1 - 1/(k-1) < δ < 1 - 1/k`.
pub fn script_p_top_range(k: u32, delta: &Rational) -> Rational {
    let dim = k * k - 1;
    let lead = Rational::new(num_bigint::BigInt::from(k).pow(dim), crate::exact::factorial(dim));
    let base = Rational::one() - Rational::new(1.into(), k.into()) - delta;
    lead * pow_rational(&base, dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::gamma::{gamma_f64, rational_to_f64};

    #[test]
    fn primes() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn a1_is_one() {
        assert_eq!(a_k_constant(1, 1000).unwrap(), 1.0);
    }

    #[test]
    fn a2_local_factor() {
        for p in primes_up_to(100) {
            let expect = 1.0 - 1.0 / (p * p) as f64;
            assert!((local_factor_finite(2, p) - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn local_factors_in_unit_interval() {
        for k in 2..6 {
            for p in primes_up_to(200) {
                let f = local_factor_finite(k, p);
                assert!(f > 0.0 && f < 1.0);
                assert!(((f - local_factor_series(k, p)) / f).abs() < 1e-12, "k={k} p={p}");
            }
        }
    }

    #[test]
    fn script_p_examples() {
        let d = rat(1, 4);
        let expect = rat(27, 64) * gamma_at_rational(2, &rat(4, 3)).unwrap();
        assert_eq!(script_p(2, &d).unwrap(), expect);
        // top range for k = 3: 1/2 < δ < 2/3
        for d in [rat(11, 20), rat(3, 5), rat(13, 20)] {
            assert_eq!(script_p(3, &d).unwrap(), script_p_top_range(3, &d));
        }
        for d in [rat(1, 5), rat(2, 5)] {
            assert_eq!(script_p(2, &d).unwrap(), script_p_top_range(2, &d));
        }
        assert!(script_p(2, &rat(1, 2)).is_err());
        assert!(script_p(2, &rat(0, 1)).is_err());
    }

    #[test]
    fn short_interval_prediction_vanishes_at_top() {
        let near = predict_variance_si(&ConjectureInput::short_interval(2, 1e6, 0.4999)).unwrap();
        let mid = predict_variance_si(&ConjectureInput::short_interval(2, 1e6, 0.25)).unwrap();
        assert!(near.shape < 1e-9);
        assert!(mid.value > 0.0);
        let recomposed = a_k_constant(2, DEFAULT_PRIME_CUTOFF).unwrap()
            * rational_to_f64(&script_p(2, &rat(1, 4)).unwrap())
            * 1e6f64.powf(0.25)
            * 1e6f64.ln().powi(3);
        assert!(((mid.value - recomposed) / recomposed).abs() < 1e-12);
    }

    #[test]
    fn progression_prediction() {
        let mut input = ConjectureInput::progression(2, 10f64.powf(4.5), 1e3);
        let p = predict_variance_ap(&input).unwrap();
        assert!(p.value.is_finite() && p.value > 0.0);
        // c = 1 only passes with epsilon = 0
        input.x = 1e3;
        assert!(predict_variance_ap(&input).is_err());
        input.epsilon = 0.0;
        let p = predict_variance_ap(&input).unwrap();
        assert!((p.shape - 1.0 / 6.0).abs() < 1e-12);
        assert!((gamma_f64(3, 0.7).unwrap() - gamma_f64(3, 2.3).unwrap()).abs() < 1e-15);
        assert_eq!(gamma_f64(2, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn short_interval_scales_with_h() {
        let a = predict_variance_si(&ConjectureInput::short_interval(2, 1e6, 0.3)).unwrap();
        assert!(((a.value / a.scale) - a.a_k * a.shape * a.log_power).abs() < 1e-9 * a.value);
    }
}
