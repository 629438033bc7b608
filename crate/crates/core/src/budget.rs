use crate::error::{Error, Result};

/// Size limits that keep exact computations from thrashing.
///
/// Every expensive entry point checks its inputs against a budget and
/// returns [`Error::Budget`] instead of starting work it cannot finish.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum `k * N` for a moment table.
    pub max_kn: u64,
    /// Maximum number of monotone column vectors in the lattice DP.
    pub max_dp_states: u64,
    /// Maximum `q^n` for function-field enumeration.
    pub max_ff_size: u64,
    /// Largest `k` accepted by [`gamma_full`](crate::gamma::gamma_full).
    pub max_gamma_k: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_kn: 160,
            max_dp_states: 10_000_000,
            max_ff_size: 100_000_000,
            max_gamma_k: 4,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_kn: u64::MAX,
            max_dp_states: u64::MAX,
            max_ff_size: u64::MAX,
            max_gamma_k: u32::MAX,
        }
    }

    pub(crate) fn check_kn(&self, k: u32, n: u32) -> Result<()> {
        let kn = u64::from(k) * u64::from(n);
        if kn > self.max_kn {
            return Err(Error::Budget(format!(
                "k*N = {kn} exceeds the limit {}",
                self.max_kn
            )));
        }
        Ok(())
    }
}
