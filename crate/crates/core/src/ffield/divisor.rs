use rayon::prelude::*;

use super::poly::{is_prime, FqPoly};
use crate::budget::Budget;
use crate::error::{ensure, Error, Result};

const NONE: u32 = u32::MAX;

/// `d_k(f)` for every monic `f ∈ F_q[t]` of degree `≤ n`.
///
/// Monic polynomials of degree `d` are stored at `offset[d] + code`, where
/// `code` holds the lower coefficients in base `q` (constant term in the
/// lowest digit). Every reducible entry also records its smallest
/// irreducible factor (smallest by degree, then code) and the cofactor.
#[derive(Debug, Clone)]
pub struct DivisorTable {
    q: u32,
    n: u32,
    k: u32,
    offsets: Vec<usize>,
    dk: Vec<u64>,
    /// Index of the smallest irreducible factor, `NONE` for irreducibles and 1.
    factor: Vec<u32>,
    cofactor: Vec<u32>,
}

/// Builds the table with the default [`Budget`].
pub fn dk_table(q: u32, n: u32, k: u32) -> Result<DivisorTable> {
    dk_table_with(q, n, k, &Budget::default())
}

pub fn dk_table_with(q: u32, n: u32, k: u32, budget: &Budget) -> Result<DivisorTable> {
    ensure!(is_prime(u64::from(q)), "q must be prime (got q = {q})");
    ensure!(k >= 1, "k must be at least 1");
    let size = u64::from(q).checked_pow(n).unwrap_or(u64::MAX);
    if size > budget.max_ff_size {
        return Err(Error::Budget(format!(
            "q^n = {q}^{n} exceeds the enumeration limit {}",
            budget.max_ff_size
        )));
    }
    ensure!(
        (f64::from(k)).powi(n as i32) < 9.2e18,
        "d_k values up to k^n must fit in 64 bits (k = {k}, n = {n})"
    );
    let mut offsets = Vec::with_capacity(n as usize + 2);
    let mut total = 0usize;
    for d in 0..=n {
        offsets.push(total);
        total += (q as usize).pow(d);
    }
    offsets.push(total);
    ensure!(total < NONE as usize, "table too large for 32-bit indices");

    let mut factor = vec![NONE; total];
    let mut cofactor = vec![NONE; total];
    sieve(q, n, &offsets, &mut factor, &mut cofactor);

    let mut dk = vec![0u64; total];
    let mut mult = vec![0u8; total];
    dk[0] = 1;
    for d in 1..=n as usize {
        let (lower_dk, upper_dk) = dk.split_at_mut(offsets[d]);
        let (lower_mult, upper_mult) = mult.split_at_mut(offsets[d]);
        let len = offsets[d + 1] - offsets[d];
        let f_range = offsets[d]..offsets[d + 1];
        upper_dk[..len]
            .par_iter_mut()
            .zip(upper_mult[..len].par_iter_mut())
            .zip(factor[f_range.clone()].par_iter().zip(cofactor[f_range].par_iter()))
            .for_each(|((value, m), (&p, &g))| {
                if p == NONE {
                    *value = u64::from(k);
                    *m = 1;
                    return;
                }
                let g = g as usize;
                let e = if factor[g] == p || g == p as usize { lower_mult[g] + 1 } else { 1 };
                *m = e;
                let e = u128::from(e);
                let v = u128::from(lower_dk[g]) * (e + u128::from(k) - 1) / e;
                *value = v as u64;
            });
    }
    Ok(DivisorTable { q, n, k, offsets, dk, factor, cofactor })
}

/// Records the smallest irreducible factor of every reducible monic.
///
/// Irreducibles are visited in increasing (degree, code) order, so the first
/// one to reach a polynomial is its smallest factor.
fn sieve(q: u32, n: u32, offsets: &[usize], factor: &mut [u32], cofactor: &mut [u32]) {
    let qu = q as usize;
    let mut prod = vec![0u32; n as usize + 1];
    let mut g_digits = vec![0u32; n as usize + 1];
    for e in 1..=n / 2 {
        for p_code in 0..qu.pow(e) {
            let p_index = offsets[e as usize] + p_code;
            if factor[p_index] != NONE {
                continue;
            }
            let p = FqPoly::from_monic_code(q, e, p_code as u64);
            let p = p.coeffs();
            for dg in 1..=(n - e) {
                let df = (e + dg) as usize;
                let base = offsets[df];
                let g_base = offsets[dg as usize];
                g_digits[..dg as usize].iter_mut().for_each(|x| *x = 0);
                g_digits[dg as usize] = 1;
                for g_code in 0..qu.pow(dg) {
                    if g_code > 0 {
                        // odometer increment of the lower digits
                        let mut i = 0;
                        loop {
                            g_digits[i] += 1;
                            if g_digits[i] < q {
                                break;
                            }
                            g_digits[i] = 0;
                            i += 1;
                        }
                    }
                    let code = product_code(q, p, &g_digits[..=dg as usize], &mut prod[..=df]);
                    let slot = base + code;
                    if factor[slot] == NONE {
                        factor[slot] = p_index as u32;
                        cofactor[slot] = (g_base + g_code) as u32;
                    }
                }
            }
        }
    }
}

/// Base-`q` code of the monic product `p·g` (both monic).
fn product_code(q: u32, p: &[u32], g: &[u32], out: &mut [u32]) -> usize {
    let q64 = u64::from(q);
    let df = out.len() - 1;
    let mut code = 0usize;
    for i in (0..df).rev() {
        let lo = i.saturating_sub(g.len() - 1);
        let hi = i.min(p.len() - 1);
        let mut acc = 0u64;
        for a in lo..=hi {
            acc += u64::from(p[a]) * u64::from(g[i - a]);
        }
        out[i] = (acc % q64) as u32;
        code = code * q as usize + out[i] as usize;
    }
    code
}

impl DivisorTable {
    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `d_k` of all monic polynomials of degree `d`, indexed by code.
    pub fn degree_slice(&self, d: u32) -> &[u64] {
        assert!(d <= self.n, "degree {d} beyond the table");
        &self.dk[self.offsets[d as usize]..self.offsets[d as usize + 1]]
    }

    pub fn dk_code(&self, degree: u32, code: u64) -> u64 {
        self.degree_slice(degree)[code as usize]
    }

    /// `d_k(f)` for a monic `f` of degree `≤ n`.
    pub fn dk(&self, f: &FqPoly) -> Result<u64> {
        let (d, code) = self.locate(f)?;
        Ok(self.dk_code(d, code))
    }

    /// Smallest irreducible factor, `None` for 1 and for irreducibles.
    pub fn smallest_factor(&self, f: &FqPoly) -> Result<Option<FqPoly>> {
        let (d, code) = self.locate(f)?;
        let p = self.factor[self.offsets[d as usize] + code as usize];
        Ok((p != NONE).then(|| self.poly_at(p as usize)))
    }

    /// Cofactor `f / P` for the smallest factor `P`.
    pub fn cofactor(&self, f: &FqPoly) -> Result<Option<FqPoly>> {
        let (d, code) = self.locate(f)?;
        let g = self.cofactor[self.offsets[d as usize] + code as usize];
        Ok((g != NONE).then(|| self.poly_at(g as usize)))
    }

    fn poly_at(&self, index: usize) -> FqPoly {
        let d = self.offsets.partition_point(|&o| o <= index) - 1;
        FqPoly::from_monic_code(self.q, d as u32, (index - self.offsets[d]) as u64)
    }

    fn locate(&self, f: &FqPoly) -> Result<(u32, u64)> {
        ensure!(f.q() == self.q, "polynomial over F_{} used with a table over F_{}", f.q(), self.q);
        let code = f.monic_code();
        ensure!(code.is_some(), "d_k is defined on monic polynomials (got {f})");
        let d = f.degree().unwrap_or(0);
        ensure!(d <= self.n, "degree {d} exceeds the table degree {}", self.n);
        Ok((d, code.unwrap_or(0)))
    }
}
