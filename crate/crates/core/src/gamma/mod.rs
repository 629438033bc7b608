//! The asymptotic coefficient `γ_k(c)` of `I_k(cN;N) ~ γ_k(c) N^{k²-1}`.
//!
//! `γ_k` is recovered exactly: for rational `c = p/q`, `I_k(pℓ; qℓ)` is a
//! polynomial of degree `k² - 1` in `N = qℓ` (an Ehrhart polynomial), so
//! `k²` exact values pin it down and its top coefficient is `γ_k(c)`. On
//! each interval `[r, r+1]` `γ_k` is a single polynomial, which is again
//! recovered by interpolation through `k²` interior values.

mod conjecture;
mod mc;
mod riemann;

pub use conjecture::{
    a_k_constant, local_factor_finite, local_factor_series, predict_variance_ap,
    predict_variance_si, primes_up_to, script_p, script_p_top_range, ConjectureInput, ConjectureMode, Prediction,
    DEFAULT_PRIME_CUTOFF,
};
pub use mc::{barnes_g_int, gamma_monte_carlo};
pub use riemann::{fourier_integral, w_k_riemann};

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::{ensure, Error, Result};
use crate::exact::{factorial, lagrange_interpolate, rat, rat_int, to_f64, DensePoly, Rational};
use crate::moments::ik_exact;

/// `γ_k` as `k` polynomial pieces; piece `r` is valid on `[r, r+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseGamma {
    k: u32,
    pieces: Vec<DensePoly>,
}

impl PiecewiseGamma {
    /// Assemble and check every structural invariant.
    pub fn new(k: u32, pieces: Vec<DensePoly>) -> Result<Self> {
        let g = PiecewiseGamma { k, pieces };
        g.verify()?;
        Ok(g)
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn pieces(&self) -> &[DensePoly] {
        &self.pieces
    }

    /// Index of the piece to use at `c` (integer breakpoints use the left piece,
    /// except `c = 0`).
    fn piece_index(&self, c: f64) -> usize {
        let r = c.ceil() as i64 - 1;
        r.clamp(0, i64::from(self.k) - 1) as usize
    }

    /// Exact value at rational `c ∈ [0, k]`.
    pub fn eval(&self, c: &Rational) -> Result<Rational> {
        ensure!(
            !c.is_negative() && *c <= rat_int(self.k),
            "γ_k(c) needs 0 <= c <= k (got c = {c}, k = {})",
            self.k
        );
        let r = c.ceil().to_integer().to_i64().unwrap_or(0) - 1;
        let r = r.clamp(0, i64::from(self.k) - 1) as usize;
        Ok(self.pieces[r].eval(c))
    }

    pub fn eval_f64(&self, c: f64) -> f64 {
        if !(0.0..=f64::from(self.k)).contains(&c) {
            return 0.0;
        }
        self.pieces[self.piece_index(c)].eval_f64(c)
    }

    /// `∫_0^k γ_k(u) du`.
    pub fn integral(&self) -> Rational {
        self.pieces
            .iter()
            .enumerate()
            .map(|(r, p)| p.integrate(&rat_int(r as i64), &rat_int(r as i64 + 1)))
            .fold(Rational::zero(), |a, b| a + b)
    }

    pub fn verify(&self) -> Result<()> {
        let k = self.k;
        let dim = (k * k - 1) as usize;
        if self.pieces.len() != k as usize {
            return Err(Error::Verification(format!("γ_{k} needs {k} pieces")));
        }
        for (r, p) in self.pieces.iter().enumerate() {
            if p.degree().is_some_and(|d| d > dim) {
                return Err(Error::Verification(format!(
                    "piece {r} has degree above k² - 1"
                )));
            }
        }
        for r in 1..k as usize {
            let at = rat_int(r as i64);
            if self.pieces[r - 1].eval(&at) != self.pieces[r].eval(&at) {
                return Err(Error::Verification(format!(
                    "pieces {} and {r} disagree at c = {r}",
                    r - 1
                )));
            }
        }
        for r in 0..k as usize {
            let mirrored = self.pieces[k as usize - 1 - r].compose_affine(&rat_int(k), &rat(-1, 1));
            if mirrored != self.pieces[r] {
                return Err(Error::Verification(format!(
                    "piece {r} breaks the symmetry γ_k(c) = γ_k(k - c)"
                )));
            }
        }
        if self.pieces[0] != first_piece_law(k) {
            return Err(Error::Verification(
                "piece 0 differs from c^(k²-1)/(k²-1)!".into(),
            ));
        }
        Ok(())
    }
}

/// `c^{k²-1} / (k²-1)!`.
pub fn first_piece_law(k: u32) -> DensePoly {
    let dim = k * k - 1;
    DensePoly::monomial(Rational::new(BigInt::one(), factorial(dim)), dim as usize)
}

/// `γ_k(c)` at rational `c ∈ [0, k]` as the top coefficient of the Ehrhart
/// polynomial `N ↦ I_k(cN; N)` on multiples of the denominator of `c`.
pub fn gamma_at_rational(k: u32, c: &Rational) -> Result<Rational> {
    ensure!(k >= 1, "k must be at least 1");
    ensure!(
        !c.is_negative() && *c <= rat_int(k),
        "γ_k(c) needs 0 <= c <= k (got c = {c}, k = {k})"
    );
    let p = c
        .numer()
        .to_u32()
        .ok_or_else(|| Error::Precondition(format!("numerator of c = {c} too large")))?;
    let q = c
        .denom()
        .to_u32()
        .ok_or_else(|| Error::Precondition(format!("denominator of c = {c} too large")))?;
    let nodes = k * k;
    let sample = |l: u32| -> Result<(Rational, Rational)> {
        let n = q
            .checked_mul(l)
            .ok_or_else(|| Error::Budget(format!("N = {q}*{l} overflows")))?;
        let m = p
            .checked_mul(l)
            .ok_or_else(|| Error::Budget(format!("m = {p}*{l} overflows")))?;
        Ok((rat_int(n), rat_int(ik_exact(k, m, n)?)))
    };
    let points = (1..=nodes).map(sample).collect::<Result<Vec<_>>>()?;
    let ehrhart = lagrange_interpolate(&points)?;
    let (check_n, check_value) = sample(nodes + 1)?;
    if ehrhart.eval(&check_n) != check_value {
        return Err(Error::Verification(format!(
            "Ehrhart interpolant for k = {k}, c = {c} mispredicts the value at N = {check_n}"
        )));
    }
    Ok(ehrhart.coeff((nodes - 1) as usize))
}

/// The polynomial that equals `γ_k` on `[r, r+1]`, interpolated through
/// `c_i = r + i/(k²+1)`, `i = 1..=k²`.
pub fn gamma_piece(k: u32, r: u32) -> Result<DensePoly> {
    ensure!(k >= 1, "k must be at least 1");
    ensure!(r < k, "piece index must satisfy 0 <= r < k (got r = {r}, k = {k})");
    let nodes = k * k;
    let step = i64::from(nodes) + 1;
    let points = (1..=nodes)
        .into_par_iter()
        .map(|i| {
            let c = rat_int(r) + rat(i64::from(i), step);
            let v = gamma_at_rational(k, &c)?;
            Ok((c, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let piece = lagrange_interpolate(&points)?;
    if piece.degree().is_some_and(|d| d + 1 > nodes as usize) {
        return Err(Error::Verification(format!(
            "piece {r} of γ_{k} has degree above k² - 1"
        )));
    }
    Ok(piece)
}

/// All pieces of `γ_k`, with continuity, symmetry and the first-piece law
/// checked before returning.
pub fn gamma_full(k: u32) -> Result<PiecewiseGamma> {
    gamma_full_with(k, &Budget::default())
}

pub fn gamma_full_with(k: u32, budget: &Budget) -> Result<PiecewiseGamma> {
    ensure!(k >= 1, "k must be at least 1");
    if k > budget.max_gamma_k {
        return Err(Error::Budget(format!(
            "γ_k reconstruction is limited to k <= {} (got k = {k})",
            budget.max_gamma_k
        )));
    }
    let pieces = (0..k).map(|r| gamma_piece(k, r)).collect::<Result<Vec<_>>>()?;
    PiecewiseGamma::new(k, pieces)
}

/// Process-wide memo of [`gamma_full`].
pub fn gamma_full_cached(k: u32) -> Result<PiecewiseGamma> {
    static CACHE: OnceLock<Mutex<HashMap<u32, PiecewiseGamma>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(g) = cache.lock().expect("gamma cache poisoned").get(&k) {
        return Ok(g.clone());
    }
    let g = gamma_full(k)?;
    cache
        .lock()
        .expect("gamma cache poisoned")
        .insert(k, g.clone());
    Ok(g)
}

/// `γ_k(c)` at a float argument from the exact pieces.
pub fn gamma_f64(k: u32, c: f64) -> Result<f64> {
    ensure!(
        (0.0..=f64::from(k)).contains(&c),
        "γ_k(c) needs 0 <= c <= k (got c = {c})"
    );
    Ok(gamma_full_cached(k)?.eval_f64(c))
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    to_f64(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma2_values() {
        assert_eq!(gamma_at_rational(2, &rat(1, 2)).unwrap(), rat(1, 48));
        assert_eq!(gamma_at_rational(2, &rat(1, 1)).unwrap(), rat(1, 6));
        assert_eq!(gamma_at_rational(2, &rat(0, 1)).unwrap(), rat(0, 1));
        assert_eq!(gamma_at_rational(2, &rat(2, 1)).unwrap(), rat(0, 1));
        assert_eq!(gamma_at_rational(1, &rat(1, 3)).unwrap(), rat(1, 1));
    }

    #[test]
    fn range_checks() {
        assert!(gamma_at_rational(2, &rat(-1, 2)).is_err());
        assert!(gamma_at_rational(2, &rat(5, 2)).is_err());
        assert!(gamma_piece(2, 2).is_err());
    }

    #[test]
    fn gamma2_pieces() {
        let g = gamma_full(2).unwrap();
        let c3 = DensePoly::monomial(rat(1, 6), 3);
        assert_eq!(g.pieces()[0], c3);
        assert_eq!(g.pieces()[1], c3.compose_affine(&rat(2, 1), &rat(-1, 1)));
        assert_eq!(g.integral(), rat(1, 12));
    }

    #[test]
    fn gamma1_is_constant() {
        let g = gamma_full(1).unwrap();
        assert_eq!(g.pieces(), &[DensePoly::one()]);
    }

    #[test]
    fn symmetric_on_grid() {
        for (p, q) in [(1, 3), (2, 5), (3, 4), (1, 7)] {
            let c = rat(p, q);
            let a = gamma_at_rational(3, &c).unwrap();
            let b = gamma_at_rational(3, &(rat(3, 1) - c)).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn verify_rejects_broken_pieces() {
        let good = gamma_full(2).unwrap();
        let mut pieces = good.pieces().to_vec();
        pieces[1] = &pieces[1] + &DensePoly::constant(rat(1, 100));
        assert!(matches!(PiecewiseGamma::new(2, pieces), Err(Error::Verification(_))));
    }

    #[test]
    fn budget_gate() {
        let b = Budget {
            max_gamma_k: 2,
            ..Budget::default()
        };
        assert!(matches!(gamma_full_with(3, &b), Err(Error::Budget(_))));
    }

    #[test]
    fn float_eval_matches_exact() {
        let g = gamma_full(2).unwrap();
        for c in [0.0, 0.25, 1.0, 1.5, 2.0] {
            let exact = g.eval(&Rational::from_float(c).unwrap()).unwrap();
            assert!((g.eval_f64(c) - rational_to_f64(&exact)).abs() < 1e-15);
        }
        assert_eq!(g.eval_f64(2.5), 0.0);
    }
}
