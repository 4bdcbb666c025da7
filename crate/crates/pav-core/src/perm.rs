//! Permutations in one-line notation, reduction, and inversion statistics.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A permutation `σ` of `[n]` in one-line notation `σ₁ ⋯ σₙ`.
///
/// Invariant: `values` is a bijection of `{1, …, n}` with `n ≥ 1`.  Positions
/// and values are one-indexed; [`Permutation::at`] performs the offset.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    /// Validate one-line values as a bijection of `{1, …, n}`.
    pub fn new(values: Vec<u32>) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(Error::invalid("a permutation must have length ≥ 1"));
        }
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n {
                return Err(Error::invalid(format!(
                    "value {v} outside 1..={n} in one-line notation"
                )));
            }
            if std::mem::replace(&mut seen[v as usize - 1], true) {
                return Err(Error::invalid(format!("duplicate value {v}")));
            }
        }
        Ok(Permutation { values })
    }

    /// The identity permutation `12 ⋯ n`.
    pub fn identity(n: usize) -> Result<Self> {
        Permutation::new((1..=n as u32).collect())
    }

    /// Length `n`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// `true` only for the never-constructible empty value; kept for clippy's
    /// `len`/`is_empty` convention.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One-line values `σ₁ ⋯ σₙ`.
    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// `σ_i` with a one-indexed position `i ∈ 1..=n`.
    ///
    /// # Panics
    /// Panics if `i` is out of range; this accessor is for internal loops
    /// that have already validated indices.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    /// The number of inversions `|inv(σ)|`, in `O(n log n)` time.
    ///
    /// An inversion is a pair of positions `i < j` with `σ_i > σ_j`; for
    /// example `34125` has four.  Use [`Permutation::inversions`] for the
    /// explicit pair list.
    pub fn inversion_count(&self) -> u64 {
        // Count via merge sort over a scratch copy; O(n log n) with no
        // allocations beyond the two buffers, suitable for n up to 10⁶.
        fn sort_count(v: &mut [u32], buf: &mut [u32]) -> u64 {
            let n = v.len();
            if n <= 1 {
                return 0;
            }
            let mid = n / 2;
            let (left, right) = v.split_at_mut(mid);
            let mut inv = sort_count(left, &mut buf[..mid]) + sort_count(right, &mut buf[mid..]);
            let (mut i, mut j) = (0usize, 0usize);
            for slot in buf[..n].iter_mut() {
                if j >= right.len() || (i < left.len() && left[i] <= right[j]) {
                    *slot = left[i];
                    i += 1;
                } else {
                    // right[j] jumps ahead of the remaining left entries.
                    inv += (left.len() - i) as u64;
                    *slot = right[j];
                    j += 1;
                }
            }
            v.copy_from_slice(&buf[..n]);
            inv
        }
        let mut scratch = self.values.clone();
        let mut buf = vec![0u32; scratch.len()];
        sort_count(&mut scratch, &mut buf)
    }

    /// The inversion set `inv(σ) = {(i,j) : i < j, σ_i > σ_j}` together with
    /// its cardinality.
    ///
    /// Pairs are one-indexed and listed in lexicographic order.  This
    /// materializes up to `C(n,2)` pairs and is intended for small `n`;
    /// large-scale callers should use [`Permutation::inversion_count`].
    pub fn inversions(&self) -> Inversions {
        let n = self.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if self.values[i] > self.values[j] {
                    pairs.push((i + 1, j + 1));
                }
            }
        }
        Inversions {
            count: pairs.len() as u64,
            pairs,
        }
    }

    /// The reversal `σʳ = σₙ ⋯ σ₁`.
    ///
    /// Reversal complements the inversion set:
    /// `|inv(σʳ)| = C(n,2) − |inv(σ)|`.
    pub fn reverse(&self) -> Permutation {
        let mut values = self.values.clone();
        values.reverse();
        Permutation { values }
    }

    /// The complement, sending each value `v` to `n + 1 − v`.
    ///
    /// Like reversal, complementation flips every inversion.  The composite
    /// reverse-complement preserves inversion counts and maps consecutive
    /// occurrences of `τ` to consecutive occurrences of the
    /// reverse-complement of `τ`.
    pub fn complement(&self) -> Permutation {
        let n = self.len() as u32;
        Permutation {
            values: self.values.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// The restriction `σ|_A`: the subsequence of `σ` consisting of exactly
    /// the values in `A`, in their original order.
    ///
    /// For `σ = 867531924` and `A = {1,3,5,7,9}` this yields `75319`.  The
    /// result is a sequence of original values, not a reduced permutation.
    /// `A` must be a nonempty set of values inside `1..=n`.
    pub fn restrict(&self, a: &[u32]) -> Result<Vec<u32>> {
        if a.is_empty() {
            return Err(Error::invalid("restriction set must be nonempty"));
        }
        let n = self.len();
        let mut member = vec![false; n + 1];
        for &v in a {
            if v == 0 || v as usize > n {
                return Err(Error::invalid(format!(
                    "restriction value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut member[v as usize], true) {
                return Err(Error::invalid(format!("duplicate restriction value {v}")));
            }
        }
        Ok(self
            .values
            .iter()
            .copied()
            .filter(|&v| member[v as usize])
            .collect())
    }
}

/// The inversion set of a permutation with its cardinality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inversions {
    /// `|inv(σ)| ≤ C(n,2)`.
    pub count: u64,
    /// One-indexed pairs `(i, j)` with `i < j` and `σ_i > σ_j`, in
    /// lexicographic order.
    pub pairs: Vec<(usize, usize)>,
}

/// Reduce a sequence of distinct integers to the permutation recording the
/// relative order of its entries.
///
/// Each entry is replaced by its rank: `826315 → 625314`.  Entries must be
/// distinct and positive; the input need not be a permutation of `1..=n`.
pub fn reduce(word: &[u32]) -> Result<Permutation> {
    if word.is_empty() {
        return Err(Error::invalid("cannot reduce an empty sequence"));
    }
    if word.contains(&0) {
        return Err(Error::invalid("entries must be positive"));
    }
    let mut order: Vec<usize> = (0..word.len()).collect();
    order.sort_by_key(|&i| word[i]);
    let mut ranks = vec![0u32; word.len()];
    for (rank, &i) in order.iter().enumerate() {
        if rank > 0 && word[order[rank - 1]] == word[i] {
            return Err(Error::invalid(format!("duplicate entry {}", word[i])));
        }
        ranks[i] = rank as u32 + 1;
    }
    Ok(Permutation { values: ranks })
}

/// Reduction into a caller-provided rank buffer, for hot window loops.
///
/// Writes the rank (1-based) of each entry of `word` into `out` in `O(m²)`
/// comparisons with no allocation.  Callers guarantee distinct entries and
/// `out.len() == word.len()`; both are debug-asserted.
pub fn reduce_to_ranks(word: &[u32], out: &mut [u8]) {
    debug_assert_eq!(word.len(), out.len());
    debug_assert!(word.len() <= u8::MAX as usize);
    for (i, &v) in word.iter().enumerate() {
        let mut rank = 1u8;
        for &w in word {
            rank += u8::from(w < v);
        }
        out[i] = rank;
    }
}

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

/// A permutation `τ ∈ S_m` used as a pattern, with its inversion count
/// cached because every Mallows-measure formula weights `τ` by
/// `q^{|inv(τ)|}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    perm: Permutation,
    inv_count: u64,
}

impl Pattern {
    /// Wrap a permutation as a pattern, caching `|inv(τ)|`.
    pub fn new(perm: Permutation) -> Pattern {
        let inv_count = perm.inversion_count();
        Pattern { perm, inv_count }
    }

    /// Parse from the textual permutation form (`"2341"` or `"2,3,4,1"`).
    pub fn parse(s: &str) -> Result<Pattern> {
        Ok(Pattern::new(s.parse::<Permutation>()?))
    }

    /// Pattern length `m`.
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    /// Always `false`; see [`Permutation::is_empty`].
    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    /// The underlying permutation `τ`.
    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    /// Cached `|inv(τ)|`.
    pub fn inv_count(&self) -> u64 {
        self.inv_count
    }

    /// The reversed pattern `τʳ`.
    pub fn reverse(&self) -> Pattern {
        Pattern::new(self.perm.reverse())
    }

    /// The reverse-complement of `τ`, which preserves `|inv(τ)|`.
    pub fn reverse_complement(&self) -> Pattern {
        Pattern::new(self.perm.reverse().complement())
    }
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

// Permutations serialize as space-free digit strings when n ≤ 9 ("251463")
// and as comma-separated integers otherwise ("10,2,1,…").  Both forms are
// accepted on input regardless of length.

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len() <= 9 {
            for &v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let mut first = true;
            for &v in &self.values {
                if !first {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            Ok(())
        }
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty permutation text"));
        }
        let values: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::invalid(format!("bad integer {part:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .ok_or_else(|| Error::invalid(format!("bad digit {c:?} in digit-string form")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::new(values)
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.perm.fmt(f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Pattern::parse(s)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
