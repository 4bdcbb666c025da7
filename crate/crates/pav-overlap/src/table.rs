//! The overlap table data type.

use std::fmt;

use pav_core::{reduce, Error, Pattern, Permutation, Result};
use serde::{Deserialize, Serialize};

/// Which overlap notion a table records.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OverlapMode {
    /// Both occurrences sit on the two length-`m` windows sharing the
    /// middle `s` positions.
    Sequential,
    /// The two occurrences sit on arbitrary index sets sharing exactly `s`
    /// positions.
    Classical,
}

impl fmt::Display for OverlapMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OverlapMode::Sequential => write!(f, "sequential"),
            OverlapMode::Classical => write!(f, "classical"),
        }
    }
}

/// One witness permutation in an overlap table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The witness `σ ∈ S_{2m−s}`.
    pub perm: Permutation,
    /// `|inv(σ)|`, the statistic the Mallows weight `q^{|inv(σ)|}` uses.
    pub inversions: u64,
    /// How many index-set pairs witness the double occurrence.  Always 1 in
    /// sequential mode (the two windows are fixed); in classical mode a
    /// permutation still counts once, with this multiplicity recorded for
    /// diagnostics.
    pub pair_count: u64,
}

/// The overlap set of a pattern at one overlap size: every witness in
/// `S_{2m−s}`, lexicographically sorted, with inversion counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OverlapTable {
    tau: Pattern,
    s: usize,
    mode: OverlapMode,
    witnesses: Vec<Witness>,
}

impl OverlapTable {
    pub(crate) fn new(
        tau: Pattern,
        s: usize,
        mode: OverlapMode,
        mut witnesses: Vec<Witness>,
    ) -> OverlapTable {
        witnesses.sort_by(|a, b| a.perm.cmp(&b.perm));
        OverlapTable {
            tau,
            s,
            mode,
            witnesses,
        }
    }

    /// The pattern `τ`.
    pub fn tau(&self) -> &Pattern {
        &self.tau
    }

    /// The overlap size `s`, with `1 ≤ s ≤ m−1`.
    pub fn s(&self) -> usize {
        self.s
    }

    /// Sequential or classical.
    pub fn mode(&self) -> OverlapMode {
        self.mode
    }

    /// The witnesses, lexicographically sorted and duplicate-free.
    pub fn witnesses(&self) -> &[Witness] {
        &self.witnesses
    }

    /// `L̄_s(τ)` (sequential) or `L_s(τ)` (classical): the number of
    /// witness permutations.
    pub fn count(&self) -> u64 {
        self.witnesses.len() as u64
    }

    /// Total index-set pair multiplicity across witnesses (diagnostic; in
    /// sequential mode this equals [`OverlapTable::count`]).
    pub fn pair_multiplicity(&self) -> u64 {
        self.witnesses.iter().map(|w| w.pair_count).sum()
    }

    /// Length `2m − s` of every witness.
    pub fn witness_len(&self) -> usize {
        2 * self.tau.len() - self.s
    }

    /// Re-derive every stored invariant from scratch: witness lengths,
    /// distinctness, sorting, inversion counts, and (in sequential mode)
    /// both window conditions.  Used to validate cache loads and in tests.
    pub fn validate(&self) -> Result<()> {
        let m = self.tau.len();
        if self.s == 0 || self.s >= m {
            return Err(Error::invalid(format!(
                "overlap size {} outside 1..={}",
                self.s,
                m - 1
            )));
        }
        let len = self.witness_len();
        for pair in self.witnesses.windows(2) {
            if pair[0].perm >= pair[1].perm {
                return Err(Error::invalid("witnesses not strictly sorted"));
            }
        }
        for w in &self.witnesses {
            if w.perm.len() != len {
                return Err(Error::invalid(format!(
                    "witness {} has length {}, expected {len}",
                    w.perm,
                    w.perm.len()
                )));
            }
            if w.perm.inversion_count() != w.inversions {
                return Err(Error::invalid(format!(
                    "witness {} stores a wrong inversion count",
                    w.perm
                )));
            }
            if self.mode == OverlapMode::Sequential {
                let v = w.perm.values();
                let first = reduce(&v[..m])?;
                let last = reduce(&v[len - m..])?;
                if first != *self.tau.perm() || last != *self.tau.perm() {
                    return Err(Error::invalid(format!(
                        "witness {} fails a window condition",
                        w.perm
                    )));
                }
            }
        }
        Ok(())
    }
}
