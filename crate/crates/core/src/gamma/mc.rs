use rand::Rng;

use crate::error::{ensure, Result};
use crate::moments::Estimate;
use crate::stats::sample_mean;

/// `G(1 + k) = 1!·2!⋯(k-1)!` for integer `k ≥ 1`.
pub fn barnes_g_int(k: u32) -> f64 {
    let mut acc = 1.0;
    let mut fact = 1.0;
    for j in 1..k {
        fact *= f64::from(j);
        acc *= fact;
    }
    acc
}

/// Monte-Carlo value of `γ_k(c)` from the Vandermonde integral over the
/// slice `w_1 + … + w_k = c` of the unit cube: draw `w_1..w_{k-1}`
/// uniformly, set `w_k = c - Σ w_i`, score `Π_{i<j} (w_i - w_j)²` when
/// `w_k ∈ [0, 1]` and zero otherwise, then scale by `1/(k! G(1+k)²)`.
pub fn gamma_monte_carlo(k: u32, c: f64, samples: u64, seed: u64) -> Result<Estimate> {
    ensure!((1..=16).contains(&k), "γ Monte Carlo supports 1 <= k <= 16 (got k = {k})");
    ensure!(
        c > 0.0 && c < f64::from(k),
        "Monte Carlo γ_k(c) needs 0 < c < k strictly (got c = {c})"
    );
    ensure!(samples >= 1000, "γ Monte Carlo needs at least 1000 samples (got {samples})");
    let kk = k as usize;
    let norm = {
        let kfact: f64 = (1..=k).map(f64::from).product();
        let g = barnes_g_int(k);
        1.0 / (kfact * g * g)
    };
    let stats = sample_mean(samples, seed, |rng| {
        let mut w = [0.0f64; 16];
        let mut sum = 0.0;
        for wi in w.iter_mut().take(kk - 1) {
            *wi = rng.gen::<f64>();
            sum += *wi;
        }
        let last = c - sum;
        if !(0.0..=1.0).contains(&last) {
            return 0.0;
        }
        w[kk - 1] = last;
        let mut v = 1.0;
        for i in 0..kk {
            for j in i + 1..kk {
                let d = w[i] - w[j];
                v *= d * d;
            }
        }
        v * norm
    });
    Ok(Estimate::from_stats(&stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn barnes_values() {
        assert_eq!(barnes_g_int(1), 1.0);
        assert_eq!(barnes_g_int(2), 1.0);
        assert_eq!(barnes_g_int(3), 2.0);
        assert_eq!(barnes_g_int(4), 12.0);
    }

    #[test]
    fn gamma2_half() {
        let e = gamma_monte_carlo(2, 0.5, 200_000, 3).unwrap();
        assert!(e.within(1.0 / 48.0, 4.0), "{e:?}");
    }

    #[test]
    fn rejects_boundary() {
        assert!(gamma_monte_carlo(2, 0.0, 1000, 1).is_err());
        assert!(gamma_monte_carlo(2, 2.0, 1000, 1).is_err());
        assert!(gamma_monte_carlo(2, 1.0, 999, 1).is_err());
    }

    #[test]
    fn continuous_across_breakpoint() {
        let a = gamma_monte_carlo(2, 1.0 - 1e-6, 200_000, 4).unwrap();
        let b = gamma_monte_carlo(2, 1.0 + 1e-6, 200_000, 5).unwrap();
        let spread = 4.0 * (a.stderr.powi(2) + b.stderr.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() <= spread);
    }
}
