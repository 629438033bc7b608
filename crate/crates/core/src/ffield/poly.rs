use std::fmt;

use crate::error::{ensure, Result};

/// Whether `q` is prime (trial division; `q` is small here).
pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Modular inverse in `Z/q`, `q` prime and `a ≠ 0 mod q`.
pub(crate) fn inv_mod(a: u32, q: u32) -> u32 {
    pow_mod(a, q - 2, q)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, q: u32) -> u32 {
    let q64 = u64::from(q);
    let mut acc = 1u64 % q64;
    let mut base = u64::from(a % q);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % q64;
        }
        base = base * base % q64;
        e >>= 1;
    }
    acc as u32
}

/// A polynomial over the prime field `F_q`; coefficient `i` multiplies `t^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    q: u32,
    coeffs: Vec<u32>,
}

impl FqPoly {
    /// Reduces every coefficient mod `q` and trims zeros. `q` must be prime.
    pub fn new(q: u32, coeffs: &[u64]) -> Result<Self> {
        ensure!(is_prime(u64::from(q)), "q must be prime (got q = {q})");
        let coeffs = coeffs.iter().map(|&c| (c % u64::from(q)) as u32).collect();
        Ok(Self::from_raw(q, coeffs))
    }

    /// Parses a comma-separated coefficient list, low degree first.
    pub fn parse(q: u32, text: &str) -> Result<Self> {
        let mut coeffs = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let value: i64 = part
                .parse()
                .map_err(|_| crate::Error::Precondition(format!("bad coefficient {part:?}")))?;
            coeffs.push(value.rem_euclid(i64::from(q)) as u64);
        }
        Self::new(q, &coeffs)
    }

    pub(crate) fn from_raw(q: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly { q, coeffs }
    }

    pub fn zero(q: u32) -> Self {
        FqPoly { q, coeffs: Vec::new() }
    }

    pub fn one(q: u32) -> Self {
        FqPoly { q, coeffs: vec![1] }
    }

    /// The monomial `t`.
    pub fn t(q: u32) -> Self {
        FqPoly { q, coeffs: vec![0, 1] }
    }

    /// The monic polynomial of degree `degree` whose lower coefficients are
    /// the base-`q` digits of `code`.
    pub fn from_monic_code(q: u32, degree: u32, mut code: u64) -> Self {
        let mut coeffs = Vec::with_capacity(degree as usize + 1);
        for _ in 0..degree {
            coeffs.push((code % u64::from(q)) as u32);
            code /= u64::from(q);
        }
        coeffs.push(1);
        FqPoly { q, coeffs }
    }

    /// Inverse of [`FqPoly::from_monic_code`]; `None` unless monic.
    pub fn monic_code(&self) -> Option<u64> {
        if !self.is_monic() {
            return None;
        }
        let d = self.coeffs.len() - 1;
        Some(
            self.coeffs[..d]
                .iter()
                .rev()
                .fold(0u64, |acc, &c| acc * u64::from(self.q) + u64::from(c)),
        )
    }

    /// Base-`q` code of a polynomial of degree `< width` (all coefficients).
    pub(crate) fn residue_code(&self) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * u64::from(self.q) + u64::from(c))
    }

    pub(crate) fn from_residue_code(q: u32, width: u32, mut code: u64) -> Self {
        let mut coeffs = Vec::with_capacity(width as usize);
        for _ in 0..width {
            coeffs.push((code % u64::from(q)) as u32);
            code /= u64::from(q);
        }
        Self::from_raw(q, coeffs)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.len().checked_sub(1).map(|d| d as u32)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// `|f| = q^{deg f}`.
    pub fn norm(&self) -> u64 {
        self.degree().map_or(0, |d| u64::from(self.q).pow(d))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + other.coeff(i)) % self.q)
            .collect();
        Self::from_raw(self.q, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| (self.coeff(i) + self.q - other.coeff(i)) % self.q)
            .collect();
        Self::from_raw(self.q, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.q);
        }
        let q = u64::from(self.q);
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + u64::from(a) * u64::from(b)) % q;
            }
        }
        Self::from_raw(self.q, out.into_iter().map(|c| c as u32).collect())
    }

    pub fn scale(&self, c: u32) -> Self {
        let q = u64::from(self.q);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| (u64::from(a) * u64::from(c) % q) as u32)
            .collect();
        Self::from_raw(self.q, coeffs)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial") as usize;
        let q = self.q;
        let lead_inv = inv_mod(divisor.coeffs[dd], q);
        let mut rem: Vec<u32> = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(q), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let factor = (u64::from(c) * u64::from(lead_inv) % u64::from(q)) as u32;
            quot[i - dd] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let sub = (u64::from(factor) * u64::from(d) % u64::from(q)) as u32;
                let slot = &mut rem[i - dd + j];
                *slot = (*slot + q - sub) % q;
            }
        }
        (Self::from_raw(q, quot), Self::from_raw(q, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic scalar multiple (the zero polynomial is returned unchanged).
    pub fn to_monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lead) => self.scale(inv_mod(lead, self.q)),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.to_monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self) -> Self {
        let mut acc = Self::one(self.q).rem(modulus);
        let mut base = self.rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            e >>= 1;
        }
        acc
    }

    /// Factorization of a monic polynomial into monic irreducibles with
    /// multiplicities, by trial division in increasing degree.
    pub fn factor(&self) -> Result<Vec<(FqPoly, u32)>> {
        ensure!(self.is_monic(), "factorization needs a monic polynomial");
        let mut rest = self.clone();
        let mut out = Vec::new();
        let mut d = 1u32;
        while 2 * d <= rest.degree().unwrap_or(0) {
            let count = u64::from(self.q).pow(d);
            for code in 0..count {
                let p = Self::from_monic_code(self.q, d, code);
                let mut e = 0;
                loop {
                    let (quot, r) = rest.div_rem(&p);
                    if !r.is_zero() {
                        break;
                    }
                    rest = quot;
                    e += 1;
                }
                if e > 0 {
                    out.push((p, e));
                }
            }
            d += 1;
        }
        if rest.degree().unwrap_or(0) > 0 {
            out.push((rest, 1));
        }
        out.sort_by_key(|(p, _)| (p.degree(), p.monic_code()));
        Ok(out)
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => {
                let f = self.to_monic();
                matches!(f.factor().as_deref(), Ok([(_, 1)]))
            }
        }
    }

    pub fn is_squarefree(&self) -> bool {
        let f = self.to_monic();
        f.factor().is_ok_and(|fs| fs.iter().all(|&(_, e)| e == 1))
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FqPoly[q={}]({self})", self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(q: u32, c: &[u64]) -> FqPoly {
        FqPoly::new(q, c).unwrap()
    }

    #[test]
    fn rejects_composite_q() {
        assert!(FqPoly::new(4, &[1, 1]).is_err());
        assert!(FqPoly::new(1, &[1]).is_err());
    }

    #[test]
    fn codes_round_trip() {
        for code in 0..125 {
            let f = FqPoly::from_monic_code(5, 3, code);
            assert_eq!(f.degree(), Some(3));
            assert_eq!(f.monic_code(), Some(code));
        }
    }

    #[test]
    fn factor_examples() {
        // t^2 + 1 is irreducible mod 3, splits mod 5
        assert!(poly(3, &[1, 0, 1]).is_irreducible());
        let fs = poly(5, &[1, 0, 1]).factor().unwrap();
        assert_eq!(fs, vec![(poly(5, &[2, 1]), 1), (poly(5, &[3, 1]), 1)]);
        let cube = poly(3, &[0, 0, 0, 1]);
        assert_eq!(cube.factor().unwrap(), vec![(FqPoly::t(3), 3)]);
        assert!(!cube.is_squarefree());
        assert!(poly(5, &[0, 1, 1]).is_squarefree());
    }

    #[test]
    fn parse_and_display() {
        let f = FqPoly::parse(3, "1,0,1").unwrap();
        assert_eq!(f.to_string(), "t^2 + 1");
        assert_eq!(FqPoly::parse(5, "-1,1").unwrap(), poly(5, &[4, 1]));
        assert!(FqPoly::parse(5, "1,x").is_err());
    }

    proptest! {
        #[test]
        fn division_identity(a in proptest::collection::vec(0u64..7, 0..8),
                             b in proptest::collection::vec(0u64..7, 1..5)) {
            let a = poly(7, &a);
            let b = poly(7, &b);
            prop_assume!(!b.is_zero());
            let (quot, r) = a.div_rem(&b);
            prop_assert_eq!(quot.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn factor_reconstructs(code in 0u64..3125) {
            let f = FqPoly::from_monic_code(5, 5, code);
            let product = f
                .factor()
                .unwrap()
                .iter()
                .fold(FqPoly::one(5), |acc, (p, e)| (0..*e).fold(acc, |acc, _| acc.mul(p)));
            prop_assert_eq!(product, f);
        }
    }
}
