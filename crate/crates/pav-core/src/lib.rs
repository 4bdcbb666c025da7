//! Permutations and the elementary machinery of pattern containment.
//!
//! A permutation of `[n] = {1, …, n}` is stored in one-line notation as the
//! sequence `σ₁ ⋯ σₙ`.  Positions and values are both one-indexed throughout;
//! conversion to zero-based indexing happens only inside method bodies.
//!
//! The central notion is *reduction*: a sequence of distinct integers reduces
//! to the permutation recording the relative order of its entries (`826315`
//! reduces to `625314`).  A pattern `τ ∈ S_m` *occurs* in `σ ∈ S_n`
//! classically if some length-`m` subsequence of `σ` reduces to `τ`, and
//! consecutively if some window `σ_i ⋯ σ_{i+m−1}` does.  This crate provides
//! reduction, inversion statistics, reversal, complement, restriction,
//! occurrence counting with explicit witnesses, and the indicator vectors
//! `(X_α)` over index sets used by the Poisson-approximation bounds in the
//! sibling crates.
//!
//! Everything here is an immutable value and every operation is a pure
//! function, so all types are safe to share and send across threads.

mod error;
mod indicator;
mod occurrence;
mod perm;

pub use error::Error;
pub use indicator::{indicator_vector, IndicatorVector, IndexSet, OccurrenceMode};
pub use occurrence::{occurrences_classical, occurrences_consecutive, window_code};
pub use perm::{reduce, reduce_to_ranks, Inversions, Pattern, Permutation};

/// Convenience alias used by every fallible operation in the workspace.
pub type Result<T> = std::result::Result<T, Error>;
