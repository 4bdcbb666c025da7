//! Index sets and the indicator vectors `(X_α)` over them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::occurrence::{occurrences_classical, occurrences_consecutive};
use crate::perm::{Pattern, Permutation};
use crate::{Error, Result};

/// Default ceiling on the number of indicator entries materialized at once.
pub const DEFAULT_INDICATOR_GUARD: u64 = 1_000_000;

/// Whether occurrences are sought on arbitrary index sets or on consecutive
/// windows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OccurrenceMode {
    /// Arbitrary index sets `i₁ < ⋯ < i_m`.
    Classical,
    /// Windows `i, i+1, …, i+m−1`.
    Consecutive,
}

impl fmt::Display for OccurrenceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OccurrenceMode::Classical => write!(f, "classical"),
            OccurrenceMode::Consecutive => write!(f, "consecutive"),
        }
    }
}

/// A strictly increasing, nonempty set of one-indexed positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Validate a strictly increasing, nonempty index sequence.
    pub fn new(indices: Vec<usize>) -> Result<IndexSet> {
        if indices.is_empty() {
            return Err(Error::invalid("index set must be nonempty"));
        }
        if indices[0] == 0 {
            return Err(Error::invalid("indices are one-based"));
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::invalid("indices must be strictly increasing"));
        }
        Ok(IndexSet { indices })
    }

    /// Construct from indices already known to be strictly increasing.
    pub(crate) fn from_sorted(indices: Vec<usize>) -> IndexSet {
        debug_assert!(!indices.is_empty() && indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet { indices }
    }

    /// The consecutive run `start, …, start+len−1`.
    pub fn run(start: usize, len: usize) -> Result<IndexSet> {
        if len == 0 {
            return Err(Error::invalid("index set must be nonempty"));
        }
        IndexSet::new((start..start + len).collect())
    }

    /// The positions, strictly increasing and one-indexed.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    /// Always `false`: emptiness is rejected at construction.
    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Whether the positions form a consecutive run.
    pub fn is_run(&self) -> bool {
        self.indices.windows(2).all(|w| w[1] == w[0] + 1)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &i in &self.indices {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// The materialized indicator vector `𝕏 = (X_α)` for a pattern in a
/// permutation: one bit per index set `α`, ordered lexicographically.
///
/// In classical mode there are exactly `C(n,m)` entries, in consecutive mode
/// exactly `n − m + 1`; the sum of the bits equals the corresponding
/// occurrence count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndicatorVector {
    mode: OccurrenceMode,
    entries: Vec<(IndexSet, bool)>,
}

impl IndicatorVector {
    /// The mode the vector was built in.
    pub fn mode(&self) -> OccurrenceMode {
        self.mode
    }

    /// The `(α, X_α)` entries in lexicographic order of `α`.
    pub fn entries(&self) -> &[(IndexSet, bool)] {
        &self.entries
    }

    /// `Σ_α X_α`.
    pub fn sum(&self) -> u64 {
        self.entries.iter().filter(|(_, bit)| *bit).count() as u64
    }

    /// The bits alone, in the same lexicographic order.
    pub fn bits(&self) -> Vec<bool> {
        self.entries.iter().map(|&(_, bit)| bit).collect()
    }
}

/// Materialize the indicator vector of `τ`-occurrences in `p`.
///
/// `guard` bounds the number of entries; `None` applies the default of
/// 10⁶.  Classical mode materializes all `C(n,m)` index sets, so the guard
/// fails loudly rather than exhausting memory.
pub fn indicator_vector(
    p: &Permutation,
    tau: &Pattern,
    mode: OccurrenceMode,
    guard: Option<u64>,
) -> Result<IndicatorVector> {
    let n = p.len();
    let m = tau.len();
    if m > n {
        return Err(Error::invalid(format!(
            "pattern length {m} exceeds permutation length {n}"
        )));
    }
    let guard = guard.unwrap_or(DEFAULT_INDICATOR_GUARD);
    let entries = match mode {
        OccurrenceMode::Consecutive => {
            let windows = (n - m + 1) as u64;
            if windows > guard {
                return Err(Error::resource(format!(
                    "indicator vector would need {windows} entries, guard is {guard}"
                )));
            }
            let (_, starts) = occurrences_consecutive(p, tau)?;
            let mut hit = vec![false; n - m + 1];
            for s in starts {
                hit[s - 1] = true;
            }
            hit.into_iter()
                .enumerate()
                .map(|(i, bit)| (IndexSet::from_sorted((i + 1..i + 1 + m).collect()), bit))
                .collect()
        }
        OccurrenceMode::Classical => {
            let total = binomial_u64(n as u64, m as u64).filter(|&c| c <= guard).ok_or_else(
                || {
                    Error::resource(format!(
                        "indicator vector would need C({n},{m}) entries, guard is {guard}"
                    ))
                },
            )?;
            let (_, witnesses) = occurrences_classical(p, tau)?;
            let mut wit_iter = witnesses.iter().peekable();
            let mut entries = Vec::with_capacity(total as usize);
            // Walk all m-subsets of 1..=n in lexicographic order, flagging
            // the ones that appear in the (also lexicographic) witness list.
            let mut subset: Vec<usize> = (1..=m).collect();
            loop {
                let bit = match wit_iter.peek() {
                    Some(w) if w.indices() == subset.as_slice() => {
                        wit_iter.next();
                        true
                    }
                    _ => false,
                };
                entries.push((IndexSet::from_sorted(subset.clone()), bit));
                // Advance to the next m-subset.
                let mut i = m;
                loop {
                    if i == 0 {
                        break;
                    }
                    if subset[i - 1] < n - (m - i) {
                        subset[i - 1] += 1;
                        for j in i..m {
                            subset[j] = subset[j - 1] + 1;
                        }
                        break;
                    }
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
            }
            entries
        }
    };
    Ok(IndicatorVector { mode, entries })
}

/// `C(n, k)` in `u64` arithmetic, `None` on overflow.
fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}
