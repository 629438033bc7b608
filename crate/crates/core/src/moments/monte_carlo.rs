use num_complex::Complex64;

use crate::error::{ensure, Result};
use crate::moments::closed_form::check_range;
use crate::moments::haar::haar_sample_secular;
use crate::stats::{sample_mean, RunningStats};

/// Monte-Carlo estimate and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
}

impl Estimate {
    pub(crate) fn from_stats(s: &RunningStats) -> Self {
        Estimate {
            mean: s.mean(),
            stderr: s.stderr(),
        }
    }

    /// Whether `exact` lies within `sigmas` standard errors of the mean.
    pub fn within(&self, exact: f64, sigmas: f64) -> bool {
        (self.mean - exact).abs() <= sigmas * self.stderr
    }
}

/// Sample mean of `|Σ_{j_1+…+j_k=m} Sc_{j_1}(U)⋯Sc_{j_k}(U)|²` over Haar `U`.
pub fn ik_monte_carlo(k: u32, m: u32, n: u32, samples: u64, seed: u64) -> Result<Estimate> {
    check_range(k, m, n)?;
    ensure!(samples >= 100, "Monte Carlo needs at least 100 samples (got {samples})");
    let stats = sample_mean(samples, seed, |rng| {
        let s = haar_sample_secular(n as usize, rng).expect("N >= 1 checked above");
        s.power_coefficient(k, m as usize).norm_sqr()
    });
    Ok(Estimate::from_stats(&stats))
}

/// Estimate of `∫ Π_i Sc_{a_i}(U) · Π_i conj(Sc_{b_i}(U)) dU`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixedMoment {
    pub mean: Complex64,
    pub stderr_re: f64,
    pub stderr_im: f64,
}

/// Monte-Carlo estimate of a mixed secular moment. For `N` at least the
/// total degree this equals the contingency count `N_{a,b}`.
pub fn secular_product_moment(
    a: &[usize],
    b: &[usize],
    n: u32,
    samples: u64,
    seed: u64,
) -> Result<MixedMoment> {
    ensure!(samples >= 100, "Monte Carlo needs at least 100 samples (got {samples})");
    ensure!(
        a.iter().chain(b).all(|&j| j <= n as usize),
        "secular indices must not exceed N = {n}"
    );
    let value = |rng: &mut rand_chacha::ChaCha8Rng| {
        let s = haar_sample_secular(n as usize, rng).expect("N >= 1");
        let sc = s.secular();
        let mut z = Complex64::new(1.0, 0.0);
        for &j in a {
            z *= sc[j];
        }
        for &j in b {
            z *= sc[j].conj();
        }
        z
    };
    // Real and imaginary parts come from the same draws (same seed/streams).
    let re = sample_mean(samples, seed, |rng| value(rng).re);
    let im = sample_mean(samples, seed, |rng| value(rng).im);
    Ok(MixedMoment {
        mean: Complex64::new(re.mean(), im.mean()),
        stderr_re: re.stderr(),
        stderr_im: im.stderr(),
    })
}
