use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{ensure, Result};
use crate::exact::BigInt;

/// Number of non-negative integer matrices with the given row and column
/// sums.
///
/// Rows are filled one at a time; the memo key is the row index and the
/// sorted multiset of remaining column capacities (column order does not
/// affect the count of completions).
pub fn contingency_count(row_sums: &[u64], col_sums: &[u64]) -> Result<BigInt> {
    let rt: u64 = row_sums.iter().sum();
    let ct: u64 = col_sums.iter().sum();
    ensure!(
        rt == ct,
        "row sums total {rt} but column sums total {ct}; they must match"
    );
    if row_sums.is_empty() || col_sums.is_empty() {
        return Ok(BigInt::one());
    }
    let mut memo = HashMap::new();
    let mut cols = col_sums.to_vec();
    cols.sort_unstable();
    Ok(fill(row_sums, 0, cols, &mut memo))
}

fn fill(
    rows: &[u64],
    row: usize,
    cols: Vec<u64>,
    memo: &mut HashMap<(usize, Vec<u64>), BigInt>,
) -> BigInt {
    if row + 1 == rows.len() {
        // The last row is forced to equal the remaining capacities.
        return BigInt::one();
    }
    if let Some(v) = memo.get(&(row, cols.clone())) {
        return v.clone();
    }
    let mut total = BigInt::zero();
    let mut pick = vec![0u64; cols.len()];
    distribute(rows[row], 0, &cols, &mut pick, &mut |p| {
        let mut rest: Vec<u64> = cols.iter().zip(p).map(|(c, x)| c - x).collect();
        rest.sort_unstable();
        total += fill(rows, row + 1, rest, memo);
    });
    memo.insert((row, cols), total.clone());
    total
}

fn distribute(
    remaining: u64,
    idx: usize,
    caps: &[u64],
    pick: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if idx + 1 == caps.len() {
        if remaining <= caps[idx] {
            pick[idx] = remaining;
            emit(pick);
        }
        return;
    }
    let tail: u64 = caps[idx + 1..].iter().sum();
    let lo = remaining.saturating_sub(tail);
    for x in lo..=remaining.min(caps[idx]) {
        pick[idx] = x;
        distribute(remaining - x, idx + 1, caps, pick, emit);
    }
}

/// All compositions of `total` into `parts` non-negative parts.
pub fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(parts);
    fn rec(total: u64, parts: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            rec(total - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut cur, &mut out);
    out
}

/// `I_k(m;N)` for `m ≤ N` as `Σ_{μ, μ̃} N_{μ,μ̃}` over compositions of `m`
/// into `k` parts.
pub fn ik_contingency(k: u32, m: u32, n: u32) -> Result<BigInt> {
    ensure!(k >= 1, "k must be at least 1");
    ensure!(
        m <= n,
        "the contingency route needs m <= N (got m = {m}, N = {n})"
    );
    let comps = compositions(u64::from(m), k as usize);
    let mut acc = BigInt::zero();
    for mu in &comps {
        for nu in &comps {
            acc += contingency_count(mu, nu)?;
        }
    }
    Ok(acc)
}
