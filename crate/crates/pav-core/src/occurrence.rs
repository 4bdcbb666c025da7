//! Occurrence counting: classical subsequences and consecutive windows.

use crate::indicator::IndexSet;
use crate::perm::{Pattern, Permutation};
use crate::{Error, Result};

/// Pack the ranks of a window of distinct values into a `u64` code, four
/// bits per entry.
///
/// Two windows have equal codes exactly when they reduce to the same
/// permutation, which makes window-versus-pattern comparison a single
/// integer compare inside the sliding-window scan.  Windows are limited to
/// 15 entries by the nibble packing; all callers stay far below that.
pub fn window_code(window: &[u32]) -> u64 {
    debug_assert!(window.len() <= 15);
    let mut code = 0u64;
    for (i, &v) in window.iter().enumerate() {
        let mut rank = 0u64;
        for &w in window {
            rank += u64::from(w < v);
        }
        code |= (rank + 1) << (4 * i);
    }
    code
}

/// Count the classical occurrences of `τ` in `p`: index sets
/// `i₁ < ⋯ < i_m` whose values `σ_{i₁} ⋯ σ_{i_m}` reduce to `τ`.
///
/// Returns the count together with every witnessing index set in
/// lexicographic order, so `p` avoids `τ` exactly when the count is 0.
/// Enumeration is a depth-first scan over positions with an incremental
/// order-isomorphism check, so subtrees that cannot extend to an occurrence
/// are pruned immediately.  Classical counting is intended for oracle-scale
/// inputs (`n` around 12 or below); the witness list alone can reach
/// `C(n,m)` entries.
pub fn occurrences_classical(p: &Permutation, tau: &Pattern) -> Result<(u64, Vec<IndexSet>)> {
    let n = p.len();
    let m = tau.len();
    if m > n {
        return Err(Error::invalid(format!(
            "pattern length {m} exceeds permutation length {n}"
        )));
    }
    // For the prefix σ_{i₁} ⋯ σ_{i_k} to stay order-isomorphic to
    // τ₁ ⋯ τ_k after appending a value v, the number of chosen values
    // below v must equal the number of τ₁ ⋯ τ_{k} entries below τ_{k+1};
    // by induction this check is also sufficient.
    let tau_vals = tau.perm().values();
    let below: Vec<usize> = (0..m)
        .map(|k| (0..k).filter(|&i| tau_vals[i] < tau_vals[k]).count())
        .collect();

    let mut witnesses = Vec::new();
    let mut chosen_pos = Vec::with_capacity(m);
    let mut chosen_val = Vec::with_capacity(m);
    fn dfs(
        values: &[u32],
        below: &[usize],
        m: usize,
        start: usize,
        chosen_pos: &mut Vec<usize>,
        chosen_val: &mut Vec<u32>,
        witnesses: &mut Vec<IndexSet>,
    ) {
        let k = chosen_pos.len();
        if k == m {
            witnesses.push(IndexSet::from_sorted(
                chosen_pos.iter().map(|&i| i + 1).collect(),
            ));
            return;
        }
        // Not enough positions remain to complete the pattern.
        let n = values.len();
        for i in start..=(n - (m - k)) {
            let v = values[i];
            let smaller = chosen_val.iter().filter(|&&w| w < v).count();
            if smaller == below[k] {
                chosen_pos.push(i);
                chosen_val.push(v);
                dfs(values, below, m, i + 1, chosen_pos, chosen_val, witnesses);
                chosen_pos.pop();
                chosen_val.pop();
            }
        }
    }
    dfs(
        p.values(),
        &below,
        m,
        0,
        &mut chosen_pos,
        &mut chosen_val,
        &mut witnesses,
    );
    Ok((witnesses.len() as u64, witnesses))
}

/// Count the consecutive occurrences of `τ` in `p`: windows
/// `σ_s ⋯ σ_{s+m−1}` that reduce to `τ`.
///
/// Returns the count together with the witnessing one-indexed start
/// positions in increasing order.  There are `n − m + 1` windows, so `p`
/// avoids `τ` consecutively exactly when the count is 0.
pub fn occurrences_consecutive(p: &Permutation, tau: &Pattern) -> Result<(u64, Vec<usize>)> {
    let n = p.len();
    let m = tau.len();
    if m > n {
        return Err(Error::invalid(format!(
            "pattern length {m} exceeds permutation length {n}"
        )));
    }
    let target = window_code(tau.perm().values());
    let mut starts = Vec::new();
    for s in 0..=(n - m) {
        if window_code(&p.values()[s..s + m]) == target {
            starts.push(s + 1);
        }
    }
    Ok((starts.len() as u64, starts))
}
