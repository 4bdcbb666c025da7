//! Batch sampling from the Mallows measure.
//!
//! Both sequential constructions reduce to the same raw material: the
//! position draws `X_j ~ Geometric(j, 1/q)` for `j = 2..=n` (`X₁ = 1` is
//! forced).  Rather than replaying the steps — `O(n)` work apiece for
//! insertion or bumping — the batch sampler assembles the final
//! permutation directly through an order-statistic tree over free slots:
//!
//! * **ordering** walks `j = n, n−1, …, 1` and writes value `j` into the
//!   `X_j`-th free *position*.  The last value inserted sits exactly at its
//!   drawn position; each earlier value is pushed one slot right by every
//!   later, larger value that landed before it — which is precisely what
//!   skipping occupied slots reproduces.
//! * **bumping** walks the same order and gives position `j` the `X_j`-th
//!   smallest free *value*.  The final appended entry keeps its drawn
//!   value; each earlier entry is bumped once by every later draw that
//!   slotted in at or below it — again exactly free-slot skipping, now in
//!   value space.
//!
//! Either way one sample costs `O(n log n)` after the draws, and the output
//! is bit-for-bit the permutation the corresponding step-by-step
//! construction would have produced from the same random stream — a
//! property the tests pin down, and the reason sampling at `n = 10⁶` is
//! practical.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use pav_bounds::QParam;
use pav_core::{Error, Permutation, Result};

use crate::geometric::{log_params, GeomBackend, LogGeom, EXACT_GEOMETRIC_MAX_N};

/// Largest `n` a sampler accepts; the working set is a few machine words
/// per entry, so this cap keeps one sample under a few gigabytes.
pub const MAX_SAMPLE_N: u64 = 100_000_000;

/// Which sequential construction realizes the draw.
///
/// Both produce exactly the Mallows(`q`) law; they differ only in how the
/// sequence of permutations is coupled across lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleStrategy {
    /// Insert each new maximum at its drawn position.
    Ordering,
    /// Bump entries at or above the drawn value and append it.
    Bumping,
}

impl SampleStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            SampleStrategy::Ordering => "ordering",
            SampleStrategy::Bumping => "bumping",
        }
    }
}

impl fmt::Display for SampleStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SampleStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<SampleStrategy> {
        match s {
            "ordering" => Ok(SampleStrategy::Ordering),
            "bumping" => Ok(SampleStrategy::Bumping),
            other => Err(Error::invalid(format!(
                "unknown sampling strategy {other:?}; expected \"ordering\" or \"bumping\""
            ))),
        }
    }
}

/// The target law: permutation length `n ≥ 1` and tilt `q > 0`.
///
/// The reversal duality `P(σ; q) = P(σʳ; 1/q)` means parameters `q` and
/// `1/q` describe mirror-image measures; both are accepted as-is.
#[derive(Debug, Clone)]
pub struct MallowsParams {
    n: u64,
    q: QParam,
}

impl MallowsParams {
    pub fn new(n: u64, q: QParam) -> Result<MallowsParams> {
        if n < 1 {
            return Err(Error::invalid("Mallows sampling needs n >= 1"));
        }
        if n > MAX_SAMPLE_N {
            return Err(Error::resource(format!(
                "n = {n} exceeds the sampling cap {MAX_SAMPLE_N}"
            )));
        }
        let q = q.validated()?;
        Ok(MallowsParams { n, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }
}

/// The per-step position laws, prepared once per `(n, q)`.
enum StepLaws {
    /// `q = 1`: every step is uniform.
    Uniform,
    /// Rational `q`: exact backends for step lengths within
    /// [`EXACT_GEOMETRIC_MAX_N`], log constants beyond.
    Exact {
        /// `backends[j − 2]` is the law of `X_j`.
        backends: Vec<GeomBackend>,
        tail: Option<(f64, bool)>,
    },
    /// Float `q`: log constants for every step.
    Log { ln_p: f64, flip: bool },
}

/// A Mallows sampler with its per-step distributions precomputed, for
/// repeated draws at fixed `(n, q, strategy)`.
pub struct MallowsSampler {
    params: MallowsParams,
    strategy: SampleStrategy,
    steps: StepLaws,
}

impl MallowsSampler {
    pub fn new(params: MallowsParams, strategy: SampleStrategy) -> Result<MallowsSampler> {
        let inv_q = params.q.recip();
        let steps = if inv_q.is_one() {
            StepLaws::Uniform
        } else {
            match &inv_q {
                QParam::Rational(_) => {
                    let exact_top = params.n.min(EXACT_GEOMETRIC_MAX_N);
                    let mut backends = Vec::new();
                    for j in 2..=exact_top {
                        backends.push(GeomBackend::new(j, &inv_q)?);
                    }
                    let tail = if params.n > EXACT_GEOMETRIC_MAX_N {
                        Some(log_params(&inv_q)?)
                    } else {
                        None
                    };
                    StepLaws::Exact { backends, tail }
                }
                QParam::Float(_) => {
                    let (ln_p, flip) = log_params(&inv_q)?;
                    StepLaws::Log { ln_p, flip }
                }
            }
        };
        Ok(MallowsSampler {
            params,
            strategy,
            steps,
        })
    }

    pub fn params(&self) -> &MallowsParams {
        &self.params
    }

    pub fn strategy(&self) -> SampleStrategy {
        self.strategy
    }

    /// The position draw `X_j` for step length `j ≥ 2`.
    fn draw_position<R: Rng>(&self, j: u64, rng: &mut R) -> u64 {
        match &self.steps {
            StepLaws::Uniform => rng.gen_range(1..=j),
            StepLaws::Exact { backends, tail } => {
                if j <= EXACT_GEOMETRIC_MAX_N {
                    backends[(j - 2) as usize].draw(rng)
                } else {
                    let (ln_p, flip) = tail.expect("tail present when n exceeds exact range");
                    LogGeom::from_ln_p(j, ln_p, flip).draw(rng)
                }
            }
            StepLaws::Log { ln_p, flip } => LogGeom::from_ln_p(j, *ln_p, *flip).draw(rng),
        }
    }

    /// Draw one permutation.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Permutation {
        let n = self.params.n as usize;
        // The draws are consumed in step order j = 2..=n, exactly as the
        // sequential constructions would, so equal seeds give equal output.
        let mut ks = vec![1u64; n + 1];
        for (j, k) in ks.iter_mut().enumerate().skip(2) {
            *k = self.draw_position(j as u64, rng);
        }
        let mut slots = FreeSlots::new(n);
        let mut out = vec![0u32; n];
        match self.strategy {
            SampleStrategy::Ordering => {
                for j in (1..=n).rev() {
                    let slot = slots.take_kth(ks[j]);
                    out[slot - 1] = j as u32;
                }
            }
            SampleStrategy::Bumping => {
                for j in (1..=n).rev() {
                    let slot = slots.take_kth(ks[j]);
                    out[j - 1] = slot as u32;
                }
            }
        }
        Permutation::new(out).expect("free-slot assembly yields a permutation")
    }
}

/// Draw one permutation from Mallows(`q`) on `S_n`.
///
/// Convenience form of [`MallowsSampler`]; prefer the sampler when drawing
/// repeatedly at the same parameters.
pub fn sample<R: Rng>(
    params: &MallowsParams,
    strategy: SampleStrategy,
    rng: &mut R,
) -> Result<Permutation> {
    Ok(MallowsSampler::new(params.clone(), strategy)?.sample(rng))
}

/// A Fenwick tree over slot occupancies supporting "take the `k`-th free
/// slot" in `O(log n)`.
struct FreeSlots {
    /// `tree[i]` carries the count of free slots in the dyadic block ending
    /// at `i`; index 0 is unused.
    tree: Vec<u64>,
    /// Largest power of two not exceeding the capacity, the starting stride
    /// of the binary-lifting descent.
    top: usize,
}

impl FreeSlots {
    fn new(n: usize) -> FreeSlots {
        // All slots start free: block counts equal block sizes.
        let mut tree = vec![0u64; n + 1];
        for (i, cell) in tree.iter_mut().enumerate().skip(1) {
            *cell = (i & i.wrapping_neg()) as u64;
        }
        let mut top = 1usize;
        while top * 2 <= n {
            top *= 2;
        }
        FreeSlots { tree, top }
    }

    /// Remove and return the `k`-th free slot (1-based).
    fn take_kth(&mut self, k: u64) -> usize {
        debug_assert!(k >= 1);
        // Descend to the largest position whose free-count prefix is < k.
        let mut pos = 0usize;
        let mut rem = k;
        let mut step = self.top;
        while step > 0 {
            let next = pos + step;
            if next < self.tree.len() && self.tree[next] < rem {
                rem -= self.tree[next];
                pos = next;
            }
            step >>= 1;
        }
        let slot = pos + 1;
        debug_assert!(slot < self.tree.len(), "k exceeds the free count");
        let mut i = slot;
        while i < self.tree.len() {
            self.tree[i] -= 1;
            i += i & i.wrapping_neg();
        }
        slot
    }
}
