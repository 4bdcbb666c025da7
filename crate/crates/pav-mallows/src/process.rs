//! The Mallows process: growing a permutation one step at a time.
//!
//! Starting from `Σ₁ = (1)`, step `j ≥ 2` draws `X_j ~ Geometric(j, 1/q)`
//! and extends the current permutation.  The *ordering* step inserts the
//! new maximum `j` at position `X_j`, so the value `j` ends up ahead of
//! exactly `j − X_j` smaller entries — `j − X_j` new inversions carrying
//! weight `q^{j−X_j}`, which is precisely the tilt the Mallows law needs.
//! Every `Σ_j` along the way is Mallows(`q`) on `S_j`, and the family is
//! consistent: restricting `Σ_n` to the values `1..=m` recovers `Σ_m`'s
//! law.
//!
//! The *bumping* step is the value-space mirror image: increment every
//! entry `≥ X_j` and append `X_j`.  It produces the same one-step law —
//! again `j − X_j` new inversions, all against the appended entry — but a
//! differently coupled sequence.  [`bumping_step`] is exposed as a pure
//! function because, unlike insertion, it is a deterministic operation
//! worth testing and composing on its own.

use pav_bounds::QParam;
use pav_core::{Error, Permutation, Result};

use crate::geometric::GeomBackend;
use crate::rng::{rng_from_seed, SamplerRng};

/// One bumping extension: increment every entry `≥ k`, then append `k`.
///
/// `k` ranges over `1..=n+1` for a length-`n` input; `k = n + 1` appends
/// the new maximum and creates no inversions, while in general exactly
/// `n + 1 − k` new inversions appear, all between the appended `k` and the
/// entries it displaced upward.
pub fn bumping_step(p: &Permutation, k: u64) -> Result<Permutation> {
    let n = p.len() as u64;
    if k < 1 || k > n + 1 {
        return Err(Error::invalid(format!(
            "bumping position {k} outside 1..={} for a length-{n} permutation",
            n + 1
        )));
    }
    let k32 = k as u32;
    let mut values = Vec::with_capacity(p.len() + 1);
    for &v in p.values() {
        values.push(if v >= k32 { v + 1 } else { v });
    }
    values.push(k32);
    Permutation::new(values)
}

/// One ordering extension: insert the new maximum `n + 1` at position `k`.
///
/// The deterministic core of [`MallowsProcessState::ordering_step`], split
/// out so the step semantics can be exercised with a chosen position.
pub(crate) fn ordering_insert(p: &Permutation, k: u64) -> Result<Permutation> {
    let n = p.len() as u64;
    if k < 1 || k > n + 1 {
        return Err(Error::invalid(format!(
            "insertion position {k} outside 1..={} for a length-{n} permutation",
            n + 1
        )));
    }
    let mut values = p.values().to_vec();
    values.insert((k - 1) as usize, (n + 1) as u32);
    Permutation::new(values)
}

/// A Mallows(`q`) process under the ordering construction: the coupled
/// sequence `Σ₁, Σ₂, …` with each `Σ_j` marginally Mallows(`q`) on `S_j`.
///
/// The state owns its random stream, so two processes built from the same
/// `(q, seed)` evolve identically.
pub struct MallowsProcessState {
    current: Permutation,
    q: QParam,
    /// `1/q`, the geometric parameter of every insertion draw.
    inv_q: QParam,
    rng: SamplerRng,
}

impl MallowsProcessState {
    /// A fresh process at `Σ₁ = (1)`.
    pub fn new(q: QParam, seed: u64) -> MallowsProcessState {
        let inv_q = q.recip();
        MallowsProcessState {
            current: Permutation::identity(1).expect("length 1 is valid"),
            q,
            inv_q,
            rng: rng_from_seed(seed),
        }
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn current(&self) -> &Permutation {
        &self.current
    }

    /// Length of the current permutation (the number of steps taken plus
    /// one).
    pub fn len(&self) -> usize {
        self.current.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Advance one step: draw `X_j ~ Geometric(j, 1/q)` for `j = len + 1`
    /// and insert the new maximum at that position.
    pub fn ordering_step(&mut self) -> &Permutation {
        let j = self.len() as u64 + 1;
        let backend = GeomBackend::new(j, &self.inv_q).expect("j >= 1");
        let k = backend.draw(&mut self.rng);
        self.current =
            ordering_insert(&self.current, k).expect("drawn position is always in range");
        &self.current
    }

    /// Step until the permutation has length `n`.
    pub fn extend_to(&mut self, n: usize) -> &Permutation {
        while self.len() < n {
            self.ordering_step();
        }
        &self.current
    }
}
