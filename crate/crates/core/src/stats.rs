//! Streaming mean/variance and the seeded sampling driver used by every
//! Monte-Carlo routine.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Number of independent sub-streams a sampling run is split into. Fixed so
/// that estimates do not depend on the thread count.
pub const CHUNKS: u64 = 64;

/// Welford accumulator; merges with Chan's pairwise update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningStats {
    count: u64,
    mean: f64,
    m2: f64,
}

impl RunningStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(self, other: RunningStats) -> RunningStats {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / count as f64;
        let m2 = self.m2
            + other.m2
            + delta * delta * (self.count as f64 * other.count as f64) / count as f64;
        RunningStats { count, mean, m2 }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64).max(0.0)
        }
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }
}

/// Generator for sub-stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draw `samples` values of `stat`, split over [`CHUNKS`] sub-streams, and
/// merge the per-chunk accumulators in a fixed order.
pub fn sample_mean<F>(samples: u64, seed: u64, stat: F) -> RunningStats
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let parts: Vec<RunningStats> = (0..CHUNKS)
        .into_par_iter()
        .map(|chunk| {
            let n = samples / CHUNKS + u64::from(chunk < samples % CHUNKS);
            let mut rng = stream_rng(seed, chunk);
            let mut acc = RunningStats::new();
            for _ in 0..n {
                acc.push(stat(&mut rng));
            }
            acc
        })
        .collect();
    parts.into_iter().fold(RunningStats::new(), RunningStats::merge)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn merge_matches_single_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| ((i * 37) % 101) as f64 * 0.25).collect();
        let mut whole = RunningStats::new();
        xs.iter().for_each(|&x| whole.push(x));
        let (a, b) = xs.split_at(313);
        let mut left = RunningStats::new();
        let mut right = RunningStats::new();
        a.iter().for_each(|&x| left.push(x));
        b.iter().for_each(|&x| right.push(x));
        let merged = left.merge(right);
        assert_eq!(merged.count(), whole.count());
        assert!((merged.mean() - whole.mean()).abs() < 1e-12);
        assert!((merged.variance() - whole.variance()).abs() < 1e-9);
    }

    #[test]
    fn sampling_is_reproducible() {
        let a = sample_mean(5000, 7, |rng| rng.gen::<f64>());
        let b = sample_mean(5000, 7, |rng| rng.gen::<f64>());
        assert_eq!(a, b);
        assert_eq!(a.count(), 5000);
        assert!((a.mean() - 0.5).abs() < 4.0 * a.stderr());
        let c = sample_mean(5000, 8, |rng| rng.gen::<f64>());
        assert_ne!(a.mean(), c.mean());
    }
}
