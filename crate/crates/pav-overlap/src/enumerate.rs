//! Exhaustive overlap enumeration over `S_{2m−s}`.

use pav_core::{occurrences_classical, window_code, Error, Pattern, Permutation, Result};
use rayon::prelude::*;

use crate::table::{OverlapMode, OverlapTable, Witness};
use crate::{DEFAULT_CLASSICAL_MAX_LEN, DEFAULT_SEQUENTIAL_MAX_M};

/// Advance `v` to its lexicographic successor; `false` once `v` was the
/// final (descending) arrangement.
fn next_permutation(v: &mut [u32]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Run `per_perm` over every permutation of `[len]`, sharded by first
/// element across threads, collecting the witnesses each shard produces.
fn scan_sn<F>(len: usize, per_perm: F) -> Vec<Witness>
where
    F: Fn(&[u32]) -> Option<Witness> + Sync,
{
    (1..=len as u32)
        .into_par_iter()
        .flat_map_iter(|first| {
            // All permutations with this first element, in lex order.
            let mut rest: Vec<u32> = (1..=len as u32).filter(|&v| v != first).collect();
            let mut buf = Vec::with_capacity(len);
            let mut out = Vec::new();
            loop {
                buf.clear();
                buf.push(first);
                buf.extend_from_slice(&rest);
                if let Some(w) = per_perm(&buf) {
                    out.push(w);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
            out
        })
        .collect()
}

fn check_s(tau: &Pattern, s: usize) -> Result<()> {
    let m = tau.len();
    if m < 2 {
        return Err(Error::invalid("overlap needs a pattern of length ≥ 2"));
    }
    if s == 0 || s >= m {
        return Err(Error::invalid(format!(
            "overlap size {s} outside 1..={} for a pattern of length {m}",
            m - 1
        )));
    }
    Ok(())
}

/// Enumerate the sequential overlap set `L̄_s(τ)` with the default size
/// guard (`m ≤ 6`).
pub fn sequential_overlap(tau: &Pattern, s: usize) -> Result<OverlapTable> {
    sequential_overlap_with_guard(tau, s, DEFAULT_SEQUENTIAL_MAX_M)
}

/// Enumerate `L̄_s(τ)`, accepting pattern lengths up to `max_m`.
///
/// The scan visits all `(2m−s)!` permutations; `m = 7` already means
/// `13! ≈ 6·10⁹`, which is why raising the guard is an explicit decision.
pub fn sequential_overlap_with_guard(
    tau: &Pattern,
    s: usize,
    max_m: usize,
) -> Result<OverlapTable> {
    check_s(tau, s)?;
    let m = tau.len();
    if m > max_m {
        return Err(Error::resource(format!(
            "sequential overlap enumeration of S_{} for pattern length {m} exceeds the guard m ≤ {max_m}",
            2 * m - s
        )));
    }
    let len = 2 * m - s;
    let target = window_code(tau.perm().values());
    let witnesses = scan_sn(len, |v| {
        if window_code(&v[..m]) == target && window_code(&v[len - m..]) == target {
            let perm = Permutation::new(v.to_vec()).expect("scan emits valid permutations");
            let inversions = perm.inversion_count();
            Some(Witness {
                perm,
                inversions,
                pair_count: 1,
            })
        } else {
            None
        }
    });
    Ok(OverlapTable::new(
        tau.clone(),
        s,
        OverlapMode::Sequential,
        witnesses,
    ))
}

/// Enumerate every sequential overlap table of `τ`, for `s = 1, …, m−1`.
///
/// Empty tables are included so `L̄_s(τ) = 0` is recorded explicitly.
pub fn sequential_overlap_all(tau: &Pattern) -> Result<Vec<OverlapTable>> {
    if tau.len() < 2 {
        return Err(Error::invalid("overlap needs a pattern of length ≥ 2"));
    }
    (1..tau.len()).map(|s| sequential_overlap(tau, s)).collect()
}

/// Enumerate the classical overlap set `L_s(τ)` with the default size guard.
pub fn classical_overlap(tau: &Pattern, s: usize) -> Result<OverlapTable> {
    classical_overlap_with_guard(tau, s, DEFAULT_CLASSICAL_MAX_LEN)
}

/// Enumerate `L_s(τ)`, accepting enumerated lengths `2m−s` up to `max_len`.
///
/// A permutation is counted once even when several index-set pairs witness
/// it; the pair multiplicity is kept on each witness.
pub fn classical_overlap_with_guard(
    tau: &Pattern,
    s: usize,
    max_len: usize,
) -> Result<OverlapTable> {
    check_s(tau, s)?;
    let m = tau.len();
    let len = 2 * m - s;
    if len > max_len {
        return Err(Error::resource(format!(
            "classical overlap enumeration of S_{len} exceeds the guard 2m−s ≤ {max_len}"
        )));
    }
    let witnesses = scan_sn(len, |v| {
        let perm = Permutation::new(v.to_vec()).expect("scan emits valid permutations");
        // All index sets carrying an occurrence of τ, then count the pairs
        // sharing exactly s positions.
        let (_, occs) = occurrences_classical(&perm, tau).expect("m ≤ 2m−s");
        let mut pairs = 0u64;
        for (a, alpha) in occs.iter().enumerate() {
            for beta in &occs[a + 1..] {
                let shared = intersection_size(alpha.indices(), beta.indices());
                if shared == s {
                    pairs += 1;
                }
            }
        }
        if pairs > 0 {
            let inversions = perm.inversion_count();
            Some(Witness {
                perm,
                inversions,
                pair_count: pairs,
            })
        } else {
            None
        }
    });
    Ok(OverlapTable::new(
        tau.clone(),
        s,
        OverlapMode::Classical,
        witnesses,
    ))
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut shared) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                shared += 1;
                i += 1;
                j += 1;
            }
        }
    }
    shared
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        Pattern::parse(s).unwrap()
    }

    #[test]
    fn next_permutation_walks_lexicographically() {
        let mut v = vec![1u32, 2, 3];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![1, 2, 3],
                vec![1, 3, 2],
                vec![2, 1, 3],
                vec![2, 3, 1],
                vec![3, 1, 2],
                vec![3, 2, 1],
            ]
        );
    }

    #[test]
    fn increasing_pattern_has_unique_witness() {
        // For τ = 12…m the only double occurrence is the identity of 2m−s.
        for m in 2..=4usize {
            let tau = Pattern::new(Permutation::identity(m).unwrap());
            for s in 1..m {
                let table = sequential_overlap(&tau, s).unwrap();
                assert_eq!(table.count(), 1, "m={m} s={s}");
                let id = Permutation::identity(2 * m - s).unwrap();
                assert_eq!(table.witnesses()[0].perm, id);
                assert_eq!(table.witnesses()[0].inversions, 0);
            }
        }
    }

    #[test]
    fn sequential_123_tables() {
        // L̄_1(123) = L̄_2(123) = 1: windows must reduce to 12345 / 1234.
        let tables = sequential_overlap_all(&pat("123")).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[0].s(), 1);
        assert_eq!(tables[0].count(), 1);
        assert_eq!(tables[1].s(), 2);
        assert_eq!(tables[1].count(), 1);
    }

    #[test]
    fn sequential_132_overlap_1() {
        let table = sequential_overlap(&pat("132"), 1).unwrap();
        let perms: Vec<String> = table.witnesses().iter().map(|w| w.perm.to_string()).collect();
        assert_eq!(perms, vec!["13254", "14253", "15243"]);
        let invs: Vec<u64> = table.witnesses().iter().map(|w| w.inversions).collect();
        assert_eq!(invs, vec![2, 3, 4]);
    }

    #[test]
    fn sequential_132_overlap_2_empty() {
        let table = sequential_overlap(&pat("132"), 2).unwrap();
        assert_eq!(table.count(), 0);
    }

    #[test]
    fn sequential_2341_tables() {
        // s = 1 has ten witnesses; a copy of 2341 only permits overlap with
        // the first or last position, so s ≥ 2 is empty.
        let tables = sequential_overlap_all(&pat("2341")).unwrap();
        assert_eq!(tables[0].count(), 10);
        assert_eq!(tables[1].count(), 0);
        assert_eq!(tables[2].count(), 0);
        let mut invs: Vec<u64> = tables[0].witnesses().iter().map(|w| w.inversions).collect();
        invs.sort_unstable();
        assert_eq!(invs, vec![9, 10, 11, 11, 12, 12, 13, 13, 14, 15]);
    }

    #[test]
    fn guards_reject_oversized_requests() {
        let tau = Pattern::new(Permutation::identity(7).unwrap());
        assert!(matches!(
            sequential_overlap(&tau, 1),
            Err(Error::ResourceLimit(_))
        ));
        // Classical guards the enumerated length 2m − s: 2·6 − 1 = 11 > 9,
        // while 2·5 − 1 = 9 is still allowed.
        let tau6 = Pattern::new(Permutation::identity(6).unwrap());
        assert!(matches!(
            classical_overlap(&tau6, 1),
            Err(Error::ResourceLimit(_))
        ));
        let tau5 = Pattern::new(Permutation::identity(5).unwrap());
        assert!(classical_overlap(&tau5, 5 - 1).is_ok());
    }

    #[test]
    fn invalid_overlap_sizes_rejected() {
        assert!(sequential_overlap(&pat("2341"), 0).is_err());
        assert!(sequential_overlap(&pat("2341"), 4).is_err());
        assert!(classical_overlap(&pat("21"), 2).is_err());
    }

    #[test]
    fn classical_21_overlap_1() {
        // Witnesses in S₃ with two descent pairs sharing one index:
        // σ must contain two occurrences of 21 overlapping in one position.
        let table = classical_overlap(&pat("21"), 1).unwrap();
        // 321 has occurrences {1,2},{1,3},{2,3}: all three pairs share one
        // index.  231 has {1,3},{2,3}; 312 has {1,2},{1,3}.
        let perms: Vec<String> = table.witnesses().iter().map(|w| w.perm.to_string()).collect();
        assert_eq!(perms, vec!["231", "312", "321"]);
        let pairs: Vec<u64> = table.witnesses().iter().map(|w| w.pair_count).collect();
        assert_eq!(pairs, vec![1, 1, 3]);
    }

    #[test]
    fn classical_12_matches_21_by_reversal() {
        // The reversal bijection preserves overlap structure.
        let a = classical_overlap(&pat("12"), 1).unwrap();
        let b = classical_overlap(&pat("21"), 1).unwrap();
        assert_eq!(a.count(), b.count());
        assert_eq!(a.pair_multiplicity(), b.pair_multiplicity());
    }

    #[test]
    fn classical_132_overlap_2() {
        // Sequentially L̄_2(132) = 0, but arbitrary index sets in S₄ can
        // still realize two copies sharing two positions.
        let table = classical_overlap(&pat("132"), 2).unwrap();
        table.validate().unwrap();
        // Spot-check one member: 1432 contains 132 on {1,2,4} and {1,3,4},
        // sharing positions {1,4}.
        assert!(table
            .witnesses()
            .iter()
            .any(|w| w.perm.to_string() == "1432"));
    }

    #[test]
    fn sequential_witnesses_appear_in_classical_support() {
        // Consecutive window pairs are index-set pairs, so every sequential
        // witness is a classical witness.
        for tau_text in ["132", "213", "231", "321"] {
            let tau = pat(tau_text);
            for s in 1..3 {
                let seq = sequential_overlap(&tau, s).unwrap();
                let cls = classical_overlap(&tau, s).unwrap();
                for w in seq.witnesses() {
                    assert!(
                        cls.witnesses().iter().any(|c| c.perm == w.perm),
                        "sequential witness {} of τ={tau_text}, s={s} missing classically",
                        w.perm
                    );
                }
            }
        }
    }

    #[test]
    fn reverse_complement_symmetry() {
        // σ ↦ reverse-complement of σ maps both window conditions onto the
        // reverse-complement pattern, so cardinalities agree.
        for tau_text in ["132", "231", "2341", "2413", "3142", "23451"] {
            let tau = pat(tau_text);
            let rc = tau.reverse_complement();
            for s in 1..tau.len() {
                if 2 * tau.len() - s > 9 {
                    continue;
                }
                let a = sequential_overlap(&tau, s).unwrap();
                let b = sequential_overlap(&rc, s).unwrap();
                assert_eq!(a.count(), b.count(), "τ={tau_text} s={s}");
            }
        }
    }

    #[test]
    fn validate_passes_on_fresh_tables() {
        for s in 1..4 {
            sequential_overlap(&pat("2341"), s).unwrap().validate().unwrap();
        }
    }
}
