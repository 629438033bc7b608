//! The Fourier transform of `I_k(·;N)` and its Riemann-sum limit.

use num_bigint::BigInt;
use num_complex::Complex64;

use super::{rational_to_f64, PiecewiseGamma};
use crate::error::Result;
use crate::exact::{rat_int, Rational};
use crate::moments::moment_table;

/// `W_k(α,N) = N^{-k²} Σ_{m=0}^{kN} I_k(m;N) e^{-2iαm/N}`.
pub fn w_k_riemann(k: u32, alpha: f64, n: u32) -> Result<Complex64> {
    let table = moment_table(k, n)?;
    let scale = BigInt::from(n).pow(k * k);
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, value) in table.values().iter().enumerate() {
        let phase = -2.0 * alpha * m as f64 / f64::from(n);
        let weight = rational_to_f64(&Rational::new(value.clone(), scale.clone()));
        acc += Complex64::from_polar(weight, phase);
    }
    Ok(acc)
}

/// `∫_0^k e^{-2iαu} γ_k(u) du`, integrated piece by piece in closed form.
pub fn fourier_integral(gamma: &PiecewiseGamma, alpha: f64) -> Complex64 {
    let s = Complex64::new(0.0, -2.0 * alpha);
    let mut acc = Complex64::new(0.0, 0.0);
    for (r, piece) in gamma.pieces().iter().enumerate() {
        // q(t) = p(r + t) on [0, 1]
        let local = piece.compose_affine(&rat_int(r as i64), &rat_int(1));
        let coeffs: Vec<f64> = local.coeffs().iter().map(rational_to_f64).collect();
        let shift = (s * r as f64).exp();
        acc += shift * unit_interval_transform(&coeffs, s);
    }
    acc
}

/// `∫_0^1 e^{st} q(t) dt` for a polynomial `q` given by its coefficients.
fn unit_interval_transform(q: &[f64], s: Complex64) -> Complex64 {
    if q.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    if s.norm() < 1.0 {
        // Σ_n s^n/n! ∫_0^1 t^n q(t) dt
        let mut acc = Complex64::new(0.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for n in 0..60u32 {
            let moment: f64 = q
                .iter()
                .enumerate()
                .map(|(j, c)| c / f64::from(n + j as u32 + 1))
                .sum();
            acc += term * moment;
            term = term * s / f64::from(n + 1);
        }
        return acc;
    }
    // e^{st} Σ_j (-1)^j q^{(j)}(t) / s^{j+1}, evaluated at 1 and 0
    let mut deriv = q.to_vec();
    let mut at_one = Complex64::new(0.0, 0.0);
    let mut at_zero = Complex64::new(0.0, 0.0);
    let mut s_pow = s;
    let mut sign = 1.0;
    while !deriv.is_empty() {
        let v1: f64 = deriv.iter().sum();
        let v0 = deriv[0];
        at_one += sign * v1 / s_pow;
        at_zero += sign * v0 / s_pow;
        deriv = deriv
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * i as f64)
            .collect();
        s_pow *= s;
        sign = -sign;
    }
    s.exp() * at_one - at_zero
}
