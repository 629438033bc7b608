use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;

use super::divisor::DivisorTable;
use super::poly::FqPoly;
use crate::error::{ensure, Result};

/// Largest `Φ(Q)` accepted by [`characters_mod`].
const MAX_GROUP_ORDER: u64 = 1 << 20;

/// The cyclic group `(F_q[t]/P)^*` with a discrete-logarithm table.
#[derive(Debug)]
struct FactorField {
    p: FqPoly,
    order: u64,
    /// `log[code]` of each nonzero residue, by residue code.
    log: Vec<u32>,
}

impl FactorField {
    fn new(p: FqPoly) -> Self {
        let q = p.q();
        let e = p.degree().unwrap_or(0);
        let order = u64::from(q).pow(e) - 1;
        let gen = primitive_element(&p, order);
        let mut log = vec![u32::MAX; order as usize + 1];
        let mut x = FqPoly::one(q);
        for i in 0..order {
            log[x.residue_code() as usize] = i as u32;
            x = x.mul(&gen).rem(&p);
        }
        FactorField { p, order, log }
    }

    fn log_of(&self, f: &FqPoly) -> Option<u64> {
        let r = f.rem(&self.p);
        if r.is_zero() {
            return None;
        }
        Some(u64::from(self.log[r.residue_code() as usize]))
    }
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primitive_element(p: &FqPoly, order: u64) -> FqPoly {
    let q = p.q();
    let width = p.degree().unwrap_or(0);
    let primes = prime_divisors(order);
    (1..=order)
        .map(|code| FqPoly::from_residue_code(q, width, code))
        .find(|g| {
            primes
                .iter()
                .all(|&r| g.pow_mod(order / r, p) != FqPoly::one(q))
        })
        .expect("the multiplicative group of a finite field is cyclic")
}

/// Data shared by all characters of one modulus.
#[derive(Debug)]
struct CharacterGroup {
    modulus: FqPoly,
    fields: Vec<FactorField>,
    /// Discrete logs of a generator of `F_q^*` in each factor field.
    constant_logs: Vec<u64>,
}

/// A Dirichlet character modulo a squarefree monic `Q`.
///
/// With `Q = P_1 ⋯ P_s`, the unit group is `Π (F_q[t]/P_i)^*`, each factor
/// cyclic of order `q^{deg P_i} - 1`; the character with exponents
/// `(a_1, …, a_s)` sends `f` to `Π exp(2πi a_i log_i(f) / (q^{deg P_i} - 1))`.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    group: Arc<CharacterGroup>,
    exponents: Vec<u64>,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> &FqPoly {
        &self.group.modulus
    }

    pub fn factors(&self) -> Vec<&FqPoly> {
        self.group.fields.iter().map(|f| &f.p).collect()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_principal(&self) -> bool {
        self.exponents.iter().all(|&a| a == 0)
    }

    /// Trivial on the nonzero constants.
    pub fn is_even(&self) -> bool {
        // Σ a_i l_i / N_i ∈ Z, checked over a common denominator
        let lcm = self
            .group
            .fields
            .iter()
            .fold(1u128, |acc, f| lcm(acc, u128::from(f.order)));
        let total = self
            .group
            .fields
            .iter()
            .zip(&self.exponents)
            .zip(&self.group.constant_logs)
            .map(|((f, &a), &l)| u128::from(a * l % f.order) * (lcm / u128::from(f.order)))
            .sum::<u128>();
        total % lcm == 0
    }

    pub fn eval(&self, f: &FqPoly) -> Complex64 {
        let mut phase = 0.0;
        for (field, &a) in self.group.fields.iter().zip(&self.exponents) {
            match field.log_of(f) {
                None => return Complex64::new(0.0, 0.0),
                Some(l) => phase += (a * l % field.order) as f64 / field.order as f64,
            }
        }
        Complex64::from_polar(1.0, TAU * phase)
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn squarefree_factors(modulus: &FqPoly) -> Result<Vec<FqPoly>> {
    ensure!(
        modulus.is_monic() && modulus.degree().unwrap_or(0) >= 1,
        "the modulus must be monic of positive degree (got {modulus})"
    );
    let factors = modulus.factor()?;
    ensure!(
        factors.iter().all(|&(_, e)| e == 1),
        "the modulus must be squarefree (got {modulus})"
    );
    Ok(factors.into_iter().map(|(p, _)| p).collect())
}

/// `Φ(Q) = Π (q^{deg P_i} - 1)` for squarefree `Q`.
pub fn phi(modulus: &FqPoly) -> Result<u64> {
    let q = u64::from(modulus.q());
    Ok(squarefree_factors(modulus)?
        .iter()
        .map(|p| q.pow(p.degree().unwrap_or(0)) - 1)
        .product())
}

/// All `Φ(Q)` characters modulo a squarefree monic `Q`; the principal
/// character comes first.
pub fn characters_mod(modulus: &FqPoly) -> Result<Vec<DirichletCharacter>> {
    let factors = squarefree_factors(modulus)?;
    let q = modulus.q();
    let order = phi(modulus)?;
    ensure!(
        order <= MAX_GROUP_ORDER,
        "Φ(Q) = {order} is larger than the supported {MAX_GROUP_ORDER}"
    );
    let fields: Vec<FactorField> = factors.into_iter().map(FactorField::new).collect();
    let root = FqPoly::from_raw(q, vec![primitive_root(q)]);
    let constant_logs = fields
        .iter()
        .map(|f| f.log_of(&root).unwrap_or(0))
        .collect();
    let group = Arc::new(CharacterGroup {
        modulus: modulus.clone(),
        fields,
        constant_logs,
    });
    let orders: Vec<u64> = group.fields.iter().map(|f| f.order).collect();
    let mut out = Vec::with_capacity(order as usize);
    let mut exps = vec![0u64; orders.len()];
    loop {
        out.push(DirichletCharacter {
            group: Arc::clone(&group),
            exponents: exps.clone(),
        });
        let mut i = 0;
        loop {
            if i == exps.len() {
                return Ok(out);
            }
            exps[i] += 1;
            if exps[i] < orders[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

fn primitive_root(q: u32) -> u32 {
    if q == 2 {
        return 1;
    }
    let primes = prime_divisors(u64::from(q - 1));
    (2..q)
        .find(|&g| {
            primes
                .iter()
                .all(|&r| super::poly::pow_mod(g, ((u64::from(q) - 1) / r) as u32, q) != 1)
        })
        .expect("F_q^* is cyclic")
}

/// Number of even characters modulo `t^m`, by enumerating the unit group
/// and its subgroup of constants.
pub fn even_character_count_prime_power(q: u32, m: u32) -> Result<u64> {
    ensure!(super::poly::is_prime(u64::from(q)), "q must be prime (got q = {q})");
    ensure!(m >= 1, "m must be at least 1");
    let size = u64::from(q).pow(m);
    // residues mod t^m are coprime to t iff the constant term is nonzero
    let units = (0..size).filter(|c| c % u64::from(q) != 0).count() as u64;
    let constants = (1..u64::from(q)).count() as u64;
    Ok(units / constants)
}

/// `Σ_{f ∈ M_d} χ(f)` for `d = 0, …, deg Q - 1`: the coefficients of
/// `L(u, χ)` for nonprincipal `χ`.
pub fn l_function(chi: &DirichletCharacter) -> Vec<Complex64> {
    let q = chi.modulus().q();
    let deg = chi.modulus().degree().unwrap_or(0);
    (0..deg)
        .map(|d| {
            (0..u64::from(q).pow(d))
                .map(|code| chi.eval(&FqPoly::from_monic_code(q, d, code)))
                .sum()
        })
        .collect()
}

/// `M(n; d_k χ)`: coefficient of `u^n` in `L(u, χ)^k`.
pub fn m_coefficient(chi: &DirichletCharacter, n: u32, k: u32) -> Result<Complex64> {
    ensure!(!chi.is_principal(), "m_coefficient needs a nonprincipal character");
    let l = l_function(chi);
    let n = n as usize;
    let mut power = vec![Complex64::new(0.0, 0.0); n + 1];
    power[0] = Complex64::new(1.0, 0.0);
    for _ in 0..k {
        let mut next = vec![Complex64::new(0.0, 0.0); n + 1];
        for (i, &a) in power.iter().enumerate() {
            for (j, &b) in l.iter().enumerate() {
                if i + j > n {
                    break;
                }
                next[i + j] += a * b;
            }
        }
        power = next;
    }
    Ok(power[n])
}

/// `Σ_{f ∈ M_n} d_k(f) χ(f)` straight from a divisor table.
pub fn m_coefficient_direct(chi: &DirichletCharacter, table: &DivisorTable, n: u32) -> Result<Complex64> {
    ensure!(n <= table.n(), "degree {n} exceeds the table degree {}", table.n());
    ensure!(chi.modulus().q() == table.q(), "character and table use different fields");
    let q = table.q();
    Ok(table
        .degree_slice(n)
        .iter()
        .enumerate()
        .map(|(code, &dk)| chi.eval(&FqPoly::from_monic_code(q, n, code as u64)) * dk as f64)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::dk_table;

    fn poly(q: u32, c: &[u64]) -> FqPoly {
        FqPoly::new(q, c).unwrap()
    }

    #[test]
    fn counts() {
        let m = poly(5, &[0, 1, 1]);
        let chars = characters_mod(&m).unwrap();
        assert_eq!(chars.len() as u64, phi(&m).unwrap());
        assert_eq!(chars.len(), 16);
        assert!(chars[0].is_principal());
        assert_eq!(chars.iter().filter(|c| c.is_even()).count(), 16 / 4);
        let m = poly(3, &[1, 0, 1]);
        let chars = characters_mod(&m).unwrap();
        assert_eq!(chars.len(), 8);
        assert_eq!(chars.iter().filter(|c| c.is_even()).count(), 8 / 2);
        assert!(characters_mod(&poly(3, &[0, 0, 1])).is_err());
    }

    #[test]
    fn even_means_trivial_on_constants() {
        let m = poly(5, &[1, 1, 0, 1]);
        for chi in characters_mod(&m).unwrap() {
            let trivial = (1..5).all(|c| (chi.eval(&poly(5, &[c])) - 1.0).norm() < 1e-9);
            assert_eq!(trivial, chi.is_even());
        }
    }

    #[test]
    fn prime_power_even_count() {
        for (q, m) in [(3, 1), (3, 4), (5, 3), (7, 2)] {
            assert_eq!(even_character_count_prime_power(q, m).unwrap(), u64::from(q).pow(m - 1));
        }
    }

    #[test]
    fn orthogonality() {
        let m = poly(3, &[2, 1, 0, 1]);
        let chars = characters_mod(&m).unwrap();
        let residues: Vec<FqPoly> = (0..27).map(|c| FqPoly::from_residue_code(3, 3, c)).collect();
        for (i, a) in chars.iter().enumerate() {
            for (j, b) in chars.iter().enumerate() {
                let s: Complex64 = residues.iter().map(|r| a.eval(r) * b.eval(r).conj()).sum();
                let expect = if i == j { chars.len() as f64 } else { 0.0 };
                assert!((s - expect).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn multiplicative_and_zero_on_non_units() {
        let m = poly(5, &[0, 1, 1]);
        let chars = characters_mod(&m).unwrap();
        let f = poly(5, &[2, 3, 1]);
        let g = poly(5, &[1, 0, 4, 1]);
        for chi in &chars {
            let lhs = chi.eval(&f.mul(&g));
            assert!((lhs - chi.eval(&f) * chi.eval(&g)).norm() < 1e-9);
            assert_eq!(chi.eval(&poly(5, &[0, 2, 3])), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn coefficient_routes_agree() {
        let m = poly(3, &[1, 0, 1]);
        let table = dk_table(3, 3, 2).unwrap();
        for chi in characters_mod(&m).unwrap().iter().skip(1) {
            for n in 0..=3 {
                let a = m_coefficient(chi, n, 2).unwrap();
                let b = m_coefficient_direct(chi, &table, n).unwrap();
                assert!((a - b).norm() < 1e-6, "n={n}");
            }
            assert_eq!(m_coefficient(chi, 3, 2).unwrap(), Complex64::new(0.0, 0.0));
        }
        let principal = &characters_mod(&m).unwrap()[0];
        assert!(m_coefficient(principal, 1, 2).is_err());
    }
}
