use crate::error::{ensure, Result};
use crate::exact::{binomial, BigInt};

/// Which closed-form range an `(m, N)` pair falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `m <= N`: `C(m + k² - 1, k² - 1)`.
    Low,
    /// `m >= (k-1)N`: `C(kN - m + k² - 1, k² - 1)`.
    High,
    /// Neither range applies; only lattice counting gives the value.
    Middle,
}

impl Branch {
    pub fn of(k: u32, m: u32, n: u32) -> Branch {
        if m <= n {
            Branch::Low
        } else if u64::from(m) >= u64::from(k - 1) * u64::from(n) {
            Branch::High
        } else {
            Branch::Middle
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Low => "low",
            Branch::High => "high",
            Branch::Middle => "middle",
        }
    }
}

pub(crate) fn check_range(k: u32, m: u32, n: u32) -> Result<()> {
    ensure!(k >= 1, "k must be at least 1 (got k = {k})");
    ensure!(n >= 1, "N must be at least 1 (got N = {n})");
    ensure!(
        u64::from(m) <= u64::from(k) * u64::from(n),
        "m must satisfy 0 <= m <= kN (got m = {m}, kN = {})",
        u64::from(k) * u64::from(n)
    );
    Ok(())
}

/// `I_k(m;N)` from the binomial formulas, or `None` in the middle range.
pub fn ik_closed_form(k: u32, m: u32, n: u32) -> Result<Option<BigInt>> {
    check_range(k, m, n)?;
    let dim = i64::from(k) * i64::from(k) - 1;
    let value = match Branch::of(k, m, n) {
        Branch::Low => Some(binomial(i64::from(m) + dim, dim)?),
        Branch::High => {
            let reflected = i64::from(k) * i64::from(n) - i64::from(m);
            Some(binomial(reflected + dim, dim)?)
        }
        Branch::Middle => None,
    };
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(ik_closed_form(2, 3, 5).unwrap(), Some(BigInt::from(20)));
        for k in 1..5 {
            assert_eq!(ik_closed_form(k, 0, 4).unwrap(), Some(BigInt::from(1)));
            assert_eq!(ik_closed_form(k, 4 * k, 4).unwrap(), Some(BigInt::from(1)));
        }
        assert_eq!(ik_closed_form(3, 15, 10).unwrap(), None);
        assert_eq!(Branch::of(3, 15, 10), Branch::Middle);
    }

    #[test]
    fn both_branches_agree_on_overlap() {
        // k = 2: m = N is in both ranges.
        for n in 1..10 {
            let low = binomial(i64::from(n) + 3, 3).unwrap();
            assert_eq!(ik_closed_form(2, n, n).unwrap(), Some(low));
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(ik_closed_form(2, 11, 5).is_err());
        assert!(ik_closed_form(0, 0, 5).is_err());
        assert!(ik_closed_form(2, 0, 0).is_err());
    }
}
