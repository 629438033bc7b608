//! Haar-random unitaries and their secular coefficients.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{ensure, Result};

/// Secular coefficients `Sc_0, …, Sc_N` of one Haar-random `U ∈ U(N)`, the
/// coefficients of `det(I + xU)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarSample {
    n: usize,
    secular: Vec<Complex64>,
}

impl HaarSample {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn secular(&self) -> &[Complex64] {
        &self.secular
    }

    /// Coefficient of `x^m` in `det(I + xU)^k`, i.e.
    /// `Σ_{j_1+…+j_k=m} Sc_{j_1} ⋯ Sc_{j_k}` with every `j_i ≤ N`.
    pub fn power_coefficient(&self, k: u32, m: usize) -> Complex64 {
        let mut acc = vec![Complex64::new(0.0, 0.0); m + 1];
        acc[0] = Complex64::new(1.0, 0.0);
        for _ in 0..k {
            let mut next = vec![Complex64::new(0.0, 0.0); m + 1];
            for (i, a) in acc.iter().enumerate() {
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for (j, s) in self.secular.iter().enumerate().take(m + 1 - i) {
                    next[i + j] += a * s;
                }
            }
            acc = next;
        }
        acc[m]
    }
}

/// Row-major `n × n` complex matrix.
#[derive(Debug, Clone)]
pub(crate) struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    fn identity(n: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        CMatrix { n, data }
    }

    fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.n + c]
    }

    fn mul(&self, other: &CMatrix) -> CMatrix {
        let n = self.n;
        let mut data = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                for j in 0..n {
                    data[i * n + j] += a * other.data[l * n + j];
                }
            }
        }
        CMatrix { n, data }
    }

    fn trace(&self) -> Complex64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }
}

/// Draw `U` from Haar measure on `U(n)`: orthonormalize the columns of a
/// complex Ginibre matrix. Gram–Schmidt leaves `R` with a positive real
/// diagonal, which is the phase normalization that makes `Q` Haar.
pub(crate) fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    // columns[j][i] = entry (i, j)
    let mut columns: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| {
                    let re: f64 = rng.sample(StandardNormal);
                    let im: f64 = rng.sample(StandardNormal);
                    Complex64::new(re * scale, im * scale)
                })
                .collect()
        })
        .collect();
    for j in 0..n {
        // Two passes of modified Gram–Schmidt.
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = columns.split_at_mut(j);
                let q = &done[i];
                let v = &mut rest[0];
                let proj: Complex64 = q.iter().zip(v.iter()).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= proj * qi;
                }
            }
        }
        let norm = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in columns[j].iter_mut() {
            *z /= norm;
        }
    }
    let mut data = vec![Complex64::new(0.0, 0.0); n * n];
    for (j, col) in columns.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            data[i * n + j] = *z;
        }
    }
    CMatrix { n, data }
}

/// Elementary symmetric functions of the eigenvalues from the power sums
/// `tr(U^j)` via Newton's identities.
pub(crate) fn secular_from_matrix(u: &CMatrix) -> Vec<Complex64> {
    let n = u.n;
    let mut power = CMatrix::identity(n);
    let mut traces = Vec::with_capacity(n + 1);
    traces.push(Complex64::new(n as f64, 0.0));
    for _ in 0..n {
        power = power.mul(u);
        traces.push(power.trace());
    }
    let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for j in 1..=n {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 1..=j {
            let term = e[j - i] * traces[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e[j] = acc / j as f64;
    }
    e
}

/// One Haar sample of dimension `n`, drawn from the caller's generator.
pub fn haar_sample_secular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<HaarSample> {
    ensure!(n >= 1, "Haar sampling needs N >= 1");
    let u = haar_unitary(n, rng);
    Ok(HaarSample {
        n,
        secular: secular_from_matrix(&u),
    })
}
