//! Overlap enumeration for pattern pairs.
//!
//! For a pattern `τ ∈ S_m` and an overlap size `1 ≤ s ≤ m−1`, the
//! *sequential overlap* set `L̄_s(τ)` collects the permutations
//! `σ ∈ S_{2m−s}` whose first and last length-`m` windows both reduce to
//! `τ`:
//!
//! ```text
//! red(σ₁ ⋯ σ_m) = red(σ_{m−s+1} ⋯ σ_{2m−s}) = τ.
//! ```
//!
//! The *classical overlap* set `L_s(τ)` drops the window restriction: it
//! collects the `σ ∈ S_{2m−s}` admitting two index sets of size `m` sharing
//! exactly `s` positions, both of whose value sequences reduce to `τ`.  A
//! permutation counts once no matter how many index-set pairs witness it;
//! the witnessing pair multiplicity is recorded separately for diagnostics.
//!
//! These cardinalities — together with the inversion counts of the
//! witnesses, summarized as an inversion generating polynomial — are
//! exactly what the second-moment terms `d₂` and `b₂` of the
//! Poisson-approximation bounds consume.
//!
//! Enumeration is deliberately exhaustive: iterate all of `S_{2m−s}` and
//! test both windows by reduction.  No efficient closed-form method for
//! these quantities is known, so the crate stays with brute force, gates it
//! behind size guards, and caches results on disk as JSON.

mod cache;
mod enumerate;
mod poly;
mod table;

pub use cache::OverlapCache;
pub use enumerate::{
    classical_overlap, classical_overlap_with_guard, sequential_overlap,
    sequential_overlap_all, sequential_overlap_with_guard,
};
pub use poly::{inversion_polynomial, InversionPolynomial};
pub use table::{OverlapMode, OverlapTable, Witness};

/// Default guard for sequential enumeration: the largest pattern length `m`
/// accepted without an explicit override.  At `m = 6` the worst case
/// enumerates `S_{11}` (≈ 4·10⁷ permutations); `m = 7` would need `S_{13}`
/// and is rejected by default.
pub const DEFAULT_SEQUENTIAL_MAX_M: usize = 6;

/// Default guard for classical enumeration, expressed as the largest
/// enumerated length `2m−s`.  Classical mode additionally scans all
/// `C(2m−s, m)` index-set pairs per permutation, so its default is tighter
/// than the sequential one.
pub const DEFAULT_CLASSICAL_MAX_LEN: usize = 9;
