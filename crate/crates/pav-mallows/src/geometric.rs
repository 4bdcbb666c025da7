//! The truncated geometric law driving both Mallows constructions.
//!
//! `Geometric(n, p)` places mass proportional to `p^{k−1}` on `k ∈ 1..=n`:
//!
//! ```text
//! P(X = k) = p^{k−1} / (1 + p + ⋯ + p^{n−1}).
//! ```
//!
//! For `p = 1` this is uniform on `1..=n`.  Sampling is by inverse CDF with
//! three regimes:
//!
//! * `p = 1` — an unbiased bounded-uniform draw, exact.
//! * rational `p` with `n ≤ 64` — exact integer arithmetic.  The uniform
//!   variate is refined lazily as a dyadic interval `[A/2^b, (A+1)/2^b)`:
//!   whenever the interval straddles a CDF threshold, another 64 random
//!   bits narrow it.  The drawn index is *exactly* inverse-CDF distributed;
//!   no rounding enters at any point.
//! * otherwise — a closed-form quantile in `f64` log space, with `p > 1`
//!   first reduced to `1/p < 1` through the reversal `k ↦ n + 1 − k`.
//!
//! The exact regime covers every pattern-length scale the bounds work at;
//! the log regime serves bulk sampling at large `n`, where the `≈ 10⁻¹⁶`
//! relative quantile error is far below any statistical resolution.

use rand::Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};

use pav_bounds::{BigScalar, QParam};
use pav_core::{Error, Result};

/// Largest `n` for which a rational parameter is sampled by exact integer
/// arithmetic; longer ranges use the log-space quantile.
pub const EXACT_GEOMETRIC_MAX_N: u64 = 64;

/// A truncated geometric distribution prepared for repeated draws.
///
/// Construction does the per-`(n, p)` work once — scaled integer CDF
/// thresholds in the exact regime, log constants otherwise — so hot loops
/// pay only the per-draw cost.
pub(crate) enum GeomBackend {
    /// `p = 1`: uniform on `1..=n`.
    Uniform { n: u64 },
    /// Exact integer inverse CDF for rational `p`, `n ≤ 64`.
    Exact(ExactGeom),
    /// Closed-form `f64` quantile, after reduction to `p < 1`.
    Log(LogGeom),
}

pub(crate) struct ExactGeom {
    /// `scaled_prefix[k−1] = Σ_{i=1}^{k} a^{i−1} b^{n−i}` for `p = a/b`:
    /// the CDF numerators over the common denominator `b^{n−1} · total`.
    scaled_prefix: Vec<Integer>,
    /// `scaled_prefix[n−1]`, the normalizing total.
    total: Integer,
}

pub(crate) struct LogGeom {
    n: u64,
    /// `ln p` for the reduced parameter `p < 1`.
    ln_p: f64,
    /// `1 − p^n`, computed as `−expm1(n ln p)`.
    one_minus_pn: f64,
    /// Whether the draw must be reflected back through `k ↦ n + 1 − k`
    /// because the original parameter exceeded one.
    flip: bool,
}

impl GeomBackend {
    pub(crate) fn new(n: u64, p: &QParam) -> Result<GeomBackend> {
        if n < 1 {
            return Err(Error::invalid("truncated geometric needs n >= 1"));
        }
        if p.is_one() {
            return Ok(GeomBackend::Uniform { n });
        }
        match p {
            QParam::Rational(r) if n <= EXACT_GEOMETRIC_MAX_N => {
                let a = r.numer();
                let b = r.denom();
                let mut scaled_prefix = Vec::with_capacity(n as usize);
                // w_k = a^{k−1} b^{n−k}, accumulated into prefix sums.
                let mut weight = Integer::from(b.pow((n - 1) as u32));
                let mut acc = Integer::new();
                for _ in 0..n {
                    acc += &weight;
                    scaled_prefix.push(acc.clone());
                    weight *= a;
                    weight.div_exact_mut(b);
                }
                let total = scaled_prefix.last().cloned().expect("n >= 1");
                Ok(GeomBackend::Exact(ExactGeom {
                    scaled_prefix,
                    total,
                }))
            }
            _ => Ok(GeomBackend::Log(LogGeom::new(n, p)?)),
        }
    }

    pub(crate) fn draw<R: Rng>(&self, rng: &mut R) -> u64 {
        match self {
            GeomBackend::Uniform { n } => rng.gen_range(1..=*n),
            GeomBackend::Exact(e) => e.draw(rng),
            GeomBackend::Log(l) => l.draw(rng),
        }
    }

    /// The exact probability vector, for tests and goodness-of-fit work.
    fn pmf(&self) -> Vec<BigScalar> {
        match self {
            GeomBackend::Uniform { n } => {
                let cell = BigScalar::from_rational(Rational::from((1u64, *n)));
                vec![cell; *n as usize]
            }
            GeomBackend::Exact(e) => {
                let mut prev = Integer::new();
                e.scaled_prefix
                    .iter()
                    .map(|pk| {
                        let w = Integer::from(pk - &prev);
                        prev = pk.clone();
                        BigScalar::from_integer(w)
                            .div(&BigScalar::from_integer(e.total.clone()))
                            .expect("total is positive")
                    })
                    .collect()
            }
            GeomBackend::Log(l) => l.pmf(),
        }
    }
}

impl ExactGeom {
    /// Inverse CDF under a lazily refined dyadic uniform variate.
    ///
    /// With `b` random bits drawn so far the variate is only known to lie
    /// in `[A/2^b, (A+1)/2^b)`.  The CDF inverse at `u` is the smallest `k`
    /// with `u < P_k/total`; over the dyadic interval that index is
    /// constant exactly when the smallest `k` with `A·total < P_k·2^b`
    /// also satisfies `(A+1)·total ≤ P_k·2^b`.  Otherwise a threshold cuts
    /// the interval and 64 more bits resolve it — with probability
    /// `≈ n·2⁻⁶⁴` per round, so the expected cost is a single word.
    fn draw<R: Rng>(&self, rng: &mut R) -> u64 {
        let mut num = Integer::new();
        let mut bits = 0u32;
        loop {
            num <<= 64;
            num += rng.next_u64();
            bits += 64;
            let lhs_lo = Integer::from(&num * &self.total);
            let lhs_hi = Integer::from(&lhs_lo + &self.total);
            for (i, pk) in self.scaled_prefix.iter().enumerate() {
                let shifted = Integer::from(pk << bits);
                if shifted > lhs_lo {
                    if shifted >= lhs_hi {
                        return i as u64 + 1;
                    }
                    // Interval straddles this threshold: refine.
                    break;
                }
            }
        }
    }
}

/// The per-parameter log constants shared by every step length: `ln p` of
/// the reduced parameter `p ≤ 1` and whether draws must be reflected.
///
/// `ln p = 0` signals a parameter indistinguishable from one at `f64`
/// precision, in which case the law is uniform.
pub(crate) fn log_params(p: &QParam) -> Result<(f64, bool)> {
    let p_f64 = match p {
        QParam::Rational(r) => r.to_f64(),
        QParam::Float(f) => *f,
    };
    if !(p_f64.is_finite() && p_f64 > 0.0) {
        return Err(Error::invalid(
            "truncated geometric parameter must be positive and finite",
        ));
    }
    let flip = p_f64 > 1.0;
    let reduced = if flip { 1.0 / p_f64 } else { p_f64 };
    let ln_p = reduced.ln();
    if ln_p == 0.0 {
        return Ok((0.0, false));
    }
    Ok((ln_p, flip))
}

impl LogGeom {
    fn new(n: u64, p: &QParam) -> Result<LogGeom> {
        let (ln_p, flip) = log_params(p)?;
        Ok(LogGeom::from_ln_p(n, ln_p, flip))
    }

    /// Assemble the length-`n` law from precomputed [`log_params`] output.
    pub(crate) fn from_ln_p(n: u64, ln_p: f64, flip: bool) -> LogGeom {
        LogGeom {
            n,
            ln_p,
            one_minus_pn: -f64::exp_m1(n as f64 * ln_p),
            flip,
        }
    }

    /// `X = ⌈ln(1 − u(1 − p^n)) / ln p⌉` for `u ~ U[0,1)`, the closed-form
    /// quantile of the truncated law, arranged around `expm1`/`ln_1p` so it
    /// stays stable as `p → 1` or `p^n → 0`.
    pub(crate) fn draw<R: Rng>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.gen();
        if self.ln_p == 0.0 {
            return 1 + ((u * self.n as f64) as u64).min(self.n - 1);
        }
        let a_log = f64::ln_1p(-u * self.one_minus_pn);
        let k = (a_log / self.ln_p).ceil() as u64;
        let k = k.clamp(1, self.n);
        if self.flip {
            self.n + 1 - k
        } else {
            k
        }
    }

    fn pmf(&self) -> Vec<BigScalar> {
        let n = self.n;
        if self.ln_p == 0.0 {
            return vec![BigScalar::from_rational(Rational::from((1u64, n))); n as usize];
        }
        (1..=n)
            .map(|k| {
                let k_eff = if self.flip { n + 1 - k } else { k };
                let log_w = (k_eff - 1) as f64 * self.ln_p;
                let mass = log_w.exp() * -f64::exp_m1(self.ln_p) / self.one_minus_pn;
                BigScalar::from_f64(mass).expect("mass is finite")
            })
            .collect()
    }
}

/// Draw once from `Geometric(n, p)`.
///
/// For repeated draws at fixed `(n, p)` prefer [`MallowsSampler`], which
/// prepares the distribution once; this convenience form rebuilds it per
/// call.
///
/// [`MallowsSampler`]: crate::MallowsSampler
pub fn truncated_geometric<R: Rng>(n: u64, p: &QParam, rng: &mut R) -> Result<u64> {
    Ok(GeomBackend::new(n, p)?.draw(rng))
}

/// The probability vector `(P(X = 1), …, P(X = n))` of `Geometric(n, p)`,
/// exact whenever the sampling backend is exact.
pub fn truncated_geometric_pmf(n: u64, p: &QParam) -> Result<Vec<BigScalar>> {
    Ok(GeomBackend::new(n, p)?.pmf())
}
