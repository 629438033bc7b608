use crate::error::{ensure, Error, Result};
use crate::exact::BigInt;
use crate::moments::closed_form::check_range;

/// Count every array in `[0, N]^{k²}` by exhaustive enumeration and tally
/// the anti-diagonal sums of those satisfying the monotonicity constraints.
/// No pruning: this is the independent oracle for the lattice DP.
pub fn bruteforce_counts(k: u32, n: u32) -> Result<Vec<u64>> {
    ensure!(k >= 1, "k must be at least 1");
    if k > 3 || n > 6 {
        return Err(Error::Budget(format!(
            "exhaustive enumeration is limited to k <= 3 and N <= 6 (got k = {k}, N = {n})"
        )));
    }
    let k = k as usize;
    let cells = k * k;
    let mut tally = vec![0u64; k * n as usize + 1];
    let mut x = vec![0u32; cells];
    loop {
        let rows_ok = (0..k).all(|r| (0..k - 1).all(|c| x[r * k + c] <= x[r * k + c + 1]));
        let cols_ok = (0..k - 1).all(|r| (0..k).all(|c| x[(r + 1) * k + c] <= x[r * k + c]));
        if rows_ok && cols_ok {
            let s: u32 = (0..k).map(|r| x[r * k + (k - 1 - r)]).sum();
            tally[s as usize] += 1;
        }
        // odometer
        let mut i = 0;
        while i < cells {
            if x[i] < n {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
        if i == cells {
            break;
        }
    }
    Ok(tally)
}

/// `I_k(m;N)` by exhaustive enumeration (k ≤ 3, N ≤ 6).
pub fn ik_bruteforce(k: u32, m: u32, n: u32) -> Result<BigInt> {
    check_range(k, m, n)?;
    let tally = bruteforce_counts(k, n)?;
    Ok(BigInt::from(tally[(k * n - m) as usize]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_is_orthonormality() {
        for n in 1..=6 {
            for m in 0..=n {
                assert_eq!(ik_bruteforce(1, m, n).unwrap(), BigInt::from(1));
            }
        }
    }

    #[test]
    fn extreme_m() {
        assert_eq!(ik_bruteforce(2, 4, 2).unwrap(), BigInt::from(1));
        assert_eq!(ik_bruteforce(2, 0, 2).unwrap(), BigInt::from(1));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(bruteforce_counts(4, 2), Err(Error::Budget(_))));
        assert!(matches!(bruteforce_counts(2, 7), Err(Error::Budget(_))));
    }
}
