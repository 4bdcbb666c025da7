//! Poisson-approximation bounds on pattern counts in uniform random
//! permutations: classical occurrences and consecutive windows.
//!
//! Both operations produce a [`UniformBoundsReport`] holding the Poisson
//! mean `λ`, the neighborhood terms `d₁` and `d₂`, the combined constant
//! `D = min(1, 1/λ)(d₁ + d₂)`, total-variation bounds for the count and for
//! the full indicator process, and the two-sided enclosure
//! `n!(e^{−λ} ∓ D)` of the number of avoiding permutations.

use std::fmt;
use std::str::FromStr;

use rug::{Float, Integer, Rational};
use serde::{Deserialize, Serialize};

use pav_core::{Error, OccurrenceMode, Pattern, Result};
use pav_overlap::{classical_overlap, sequential_overlap};

use crate::invpoly::EXACT_FACTORIAL_MAX_N;
use crate::scalar::{binomial, factorial, log10_factorial, BigScalar, LOG_PRECISION};

/// Largest pattern length for which the combinatorial quantities
/// (binomials, factorials, the crude pair sum) are carried exactly; larger
/// requests fall back to log-space where possible.
pub const MAX_EXACT_PATTERN_LEN: u64 = 20_000;

/// How the pair-overlap term `d₂` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum D2Method {
    /// Exact enumeration of the overlap sets `L_s(τ)` (small patterns
    /// only; enumeration guards apply).
    #[serde(rename = "exact")]
    ExactOverlap,
    /// The pattern-free combinatorial bound: classically
    /// `d₂ ≤ (C(n,j)/j!) Σ_s C(n−j, j−s)/(j−s)!`, on consecutive windows
    /// `d̄₂ ≤ Σ_s (n−2m+s) s!/m!²`.
    #[serde(rename = "crude")]
    Crude,
    /// Stirling-type closed bound
    /// `d₂ ≤ (λ/2π) e^{1/12−3/13} e^{2√(n−j)} log j`; classical mode only.
    #[serde(rename = "robbins")]
    Robbins,
    /// Truncated factorial series `d̄₂ = 2λ̄ Σ_{k=1}^{m−1} 1/k!`;
    /// consecutive mode only.
    #[serde(rename = "series")]
    Series,
}

impl D2Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            D2Method::ExactOverlap => "exact",
            D2Method::Crude => "crude",
            D2Method::Robbins => "robbins",
            D2Method::Series => "series",
        }
    }
}

impl fmt::Display for D2Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for D2Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<D2Method> {
        match s {
            "exact" | "exact-overlap" => Ok(D2Method::ExactOverlap),
            "crude" => Ok(D2Method::Crude),
            "robbins" => Ok(D2Method::Robbins),
            "series" => Ok(D2Method::Series),
            other => Err(Error::invalid(format!(
                "unknown d2 method {other:?}; expected exact, crude, robbins, or series"
            ))),
        }
    }
}

/// Everything the uniform-case bound computations produce.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct UniformBoundsReport {
    pub n: u64,
    pub pattern_len: u64,
    pub mode: OccurrenceMode,
    pub tau: Option<Pattern>,
    pub d2_method: D2Method,
    /// Poisson mean: `C(n,j)/j!` (classical) or `(n−m)/m!` (consecutive).
    pub lambda: BigScalar,
    pub d1: BigScalar,
    pub d2: BigScalar,
    /// `D = min(1, 1/λ)(d₁ + d₂)`.
    #[serde(rename = "D")]
    pub big_d: BigScalar,
    /// `2D`, bounding the total-variation distance from the count to
    /// Poisson(λ).
    pub tv_count_bound: BigScalar,
    /// `4D + 2λ/j!`, bounding the distance from the indicator process to
    /// an independent Bernoulli process with matched marginals.
    pub tv_process_bound: BigScalar,
    pub n_factorial: BigScalar,
    /// `n!(e^{−λ} − D)`, clamped below at 0.
    pub count_lower: BigScalar,
    /// `n!(e^{−λ} + D)`.
    pub count_upper: BigScalar,
    pub count_lower_clamped: bool,
    /// Window-pair count `n₁ = 2mn − 3m² + m` (consecutive mode only).
    pub n1: Option<i128>,
    /// Set when `2m − 1 > n`, where the `n₁` formula overcounts and is
    /// retained only as an upper bound.
    pub n1_out_of_range: bool,
    pub notes: Vec<String>,
}

/// `n!` exactly up to the size guard, in log space beyond it.
pub(crate) fn factorial_scalar(n: u64) -> BigScalar {
    if n <= EXACT_FACTORIAL_MAX_N {
        BigScalar::from_integer(factorial(n))
    } else {
        BigScalar::from_log10(1, log10_factorial(n))
    }
}

/// `log₁₀ C(n, k)` for `0 ≤ k ≤ n`, via the log-gamma function.
fn log10_binomial(n: u64, k: u64) -> Float {
    log10_factorial(n) - log10_factorial(k) - log10_factorial(n - k)
}

/// Whether `(n, j)` is small enough for exact binomial/factorial work.
fn exact_combinatorics(n: u64, j: u64) -> bool {
    j <= MAX_EXACT_PATTERN_LEN && n <= u32::MAX as u64
}

/// `λ = C(n,j)/j!`, exact when the sizes allow.
pub(crate) fn classical_lambda(n: u64, j: u64) -> BigScalar {
    if exact_combinatorics(n, j) {
        BigScalar::from_rational(Rational::from((binomial(n, j), factorial(j))))
    } else {
        BigScalar::from_log10(1, log10_binomial(n, j) - log10_factorial(j))
    }
}

/// `d₁ = C(n,j)(C(n,j) − C(n−j,j))/j!²`.
pub(crate) fn classical_d1(n: u64, j: u64) -> BigScalar {
    if exact_combinatorics(n, j) {
        let b = binomial(n, j);
        let inner = b.clone() - binomial(n - j, j);
        let num = b * inner;
        let jf = factorial(j);
        let den = Integer::from(&jf * &jf);
        BigScalar::from_rational(Rational::from((num, den)))
    } else {
        let lb = log10_binomial(n, j);
        let lf2 = log10_factorial(j) * 2u32;
        let square = BigScalar::from_log10(1, lb.clone() * 2u32 - lf2.clone());
        if n - j < j {
            return square;
        }
        let cross = BigScalar::from_log10(1, lb + log10_binomial(n - j, j) - lf2);
        square.sub(&cross)
    }
}

/// Exact crude pair sum `(C(n,j)/j!) Σ_{k=1}^{j−1} C(n−j,k)/k!`, evaluated
/// over the common denominator `(j−1)!` by a Horner recurrence.
fn classical_crude_d2(n: u64, j: u64) -> Result<BigScalar> {
    if !exact_combinatorics(n, j) {
        return Err(Error::resource(format!(
            "crude pair sum at j = {j} exceeds the exact-arithmetic guard \
             ({MAX_EXACT_PATTERN_LEN}); use the robbins method"
        )));
    }
    let r = n - j;
    // acc after step k equals Σ_{i=1}^{k} C(r, i) k!/i!.
    let mut acc = Integer::new();
    let mut c = Integer::from(1); // C(r, k), updated incrementally
    for k in 1..j {
        if k <= r {
            c *= r - k + 1;
            c = c.div_exact(&Integer::from(k));
        } else {
            c = Integer::new();
        }
        acc *= k;
        acc += &c;
    }
    let num = binomial(n, j) * acc;
    let den = factorial(j) * factorial(j - 1);
    Ok(BigScalar::from_rational(Rational::from((num, den))))
}

/// The Stirling-type closed bound
/// `(λ/2π) e^{1/12 − 3/13} e^{2√(n−j)} log j` (natural logarithm).
fn classical_robbins_d2(n: u64, j: u64, lambda: &BigScalar) -> BigScalar {
    let (sign, log10_lambda) = lambda.to_log_parts();
    debug_assert_eq!(sign, 1);
    let p = LOG_PRECISION;
    let log10_e = Float::with_val(p, 1u32).exp().log10();
    let two_pi = Float::with_val(p, rug::float::Constant::Pi) * 2u32;
    let robbins_exp = Float::with_val(p, 1u32) / 12u32 - Float::with_val(p, 3u32) / 13u32;
    let sqrt_term = Float::with_val(p, n - j).sqrt() * 2u32;
    let ln_j = Float::with_val(p, j).ln();
    let log10 = log10_lambda - two_pi.log10() + (robbins_exp + sqrt_term) * log10_e
        + ln_j.log10();
    BigScalar::from_log10(1, log10)
}

/// Exact overlap-table pair sum `Σ_s C(n, 2j−s) · 2 L_s(τ) / (2j−s)!`.
fn classical_exact_d2(n: u64, j: u64, tau: &Pattern) -> Result<BigScalar> {
    let mut d2 = Rational::new();
    for s in 1..j {
        let window = 2 * j - s;
        if window > n {
            continue; // C(n, window) = 0
        }
        let table = classical_overlap(tau, s as usize)?;
        let ls = table.count();
        if ls == 0 {
            continue;
        }
        let num = binomial(n, window) * Integer::from(2 * ls);
        d2 += Rational::from((num, factorial(window)));
    }
    Ok(BigScalar::from_rational(d2))
}

/// Exact overlap-table window sum `Σ_s (n−2m+s) · 2 L̄_s(τ) / (2m−s)!`.
/// Individual terms can be negative when `n < 2m − 1`; the sum is used as
/// stated, with a note.
fn consecutive_exact_d2(
    n: u64,
    m: u64,
    tau: &Pattern,
    notes: &mut Vec<String>,
) -> Result<BigScalar> {
    let mut d2 = Rational::new();
    let mut negative = false;
    for s in 1..m {
        let table = sequential_overlap(tau, s as usize)?;
        let ls = table.count();
        if ls == 0 {
            continue;
        }
        let factor = n as i128 - 2 * m as i128 + s as i128;
        if factor < 0 {
            negative = true;
        }
        let num = Integer::from(factor) * Integer::from(2 * ls);
        d2 += Rational::from((num, factorial(2 * m - s)));
    }
    if negative {
        notes.push(
            "some window-pair factors (n - 2m + s) are negative; the overlap sum is used as \
             stated"
                .to_string(),
        );
    }
    Ok(BigScalar::from_rational(d2))
}

/// Pattern-free window bound `Σ_s (n−2m+s) s!/m!²`.  Signed like the exact
/// sum.  Note: this printed form carries no doubling, so it does not always
/// dominate the exact overlap sum (which does).
fn consecutive_crude_d2(n: u64, m: u64, notes: &mut Vec<String>) -> Result<BigScalar> {
    if m > MAX_EXACT_PATTERN_LEN {
        return Err(Error::resource(format!(
            "crude window sum at m = {m} exceeds the exact-arithmetic guard \
             ({MAX_EXACT_PATTERN_LEN})"
        )));
    }
    // Horner over s descending: acc_s = c_s + (s+1) acc_{s+1} gives
    // Σ_s c_s s! with c_s = n − 2m + s.
    let mut acc = Integer::new();
    for s in (1..m).rev() {
        let c = n as i128 - 2 * m as i128 + s as i128;
        acc *= s + 1;
        acc += Integer::from(c);
    }
    // The descending loop ends having multiplied by 2·3⋯ only for inner
    // levels; the outermost weight is 1! = 1.
    let mf = factorial(m);
    let den = Integer::from(&mf * &mf);
    let d2 = BigScalar::from_rational(Rational::from((acc, den)));
    notes.push(
        "crude window sum follows the printed form Σ (n-2m+s) s!/m!^2, which carries no \
         doubling and so need not dominate the exact overlap sum"
            .to_string(),
    );
    Ok(d2)
}

/// Factorial-series evaluation `d̄₂ = 2λ̄ Σ_{k=1}^{m−1} 1/k!`.  This is the
/// evaluation that reproduces the published consecutive-pattern table
/// digits.
fn consecutive_series_d2(n: u64, m: u64, lambda: &BigScalar) -> Result<BigScalar> {
    if m > MAX_EXACT_PATTERN_LEN {
        return Err(Error::resource(format!(
            "series window sum at m = {m} exceeds the exact-arithmetic guard \
             ({MAX_EXACT_PATTERN_LEN})"
        )));
    }
    debug_assert!(n >= m);
    // Σ_{k=1}^{m−1} 1/k! = acc/(m−1)! with acc = Σ_k (m−1)!/k! by Horner.
    let mut acc = Integer::new();
    for k in 1..m {
        acc *= k;
        acc += 1u32;
    }
    let series = BigScalar::from_rational(Rational::from((acc, factorial(m - 1))));
    Ok(BigScalar::from_u64(2).mul(lambda).mul(&series))
}

/// Shared tail: combine `λ`, `d₁`, `d₂` into `D`, the TV bounds, and the
/// avoidance-count interval.
#[allow(clippy::too_many_arguments)]
fn assemble(
    n: u64,
    pattern_len: u64,
    mode: OccurrenceMode,
    tau: Option<&Pattern>,
    d2_method: D2Method,
    lambda: BigScalar,
    d1: BigScalar,
    d2: BigScalar,
    n1: Option<i128>,
    n1_out_of_range: bool,
    mut notes: Vec<String>,
) -> Result<UniformBoundsReport> {
    let sum = d1.add(&d2);
    let scale = if lambda.is_zero() {
        BigScalar::one() // min(1, 1/λ) → 1 as λ → 0⁺
    } else {
        lambda.min_one_recip()?
    };
    let big_d = scale.mul(&sum);
    let tv_count_bound = BigScalar::from_u64(2).mul(&big_d);
    let pattern_factorial = factorial_scalar(pattern_len);
    let marginal = BigScalar::from_u64(2).mul(&lambda).div(&pattern_factorial)?;
    let tv_process_bound = BigScalar::from_u64(4).mul(&big_d).add(&marginal);

    let n_factorial = factorial_scalar(n);
    let exp_neg = lambda.exp_neg();
    let raw_lower = exp_neg.sub(&big_d);
    let raw_upper = exp_neg.add(&big_d);
    // A negative D (possible at small n, where the window-pair count and
    // overlap factors can go negative) would invert the interval; order the
    // endpoints and say so.
    let (lower_factor, upper_factor) = if big_d.signum() < 0 {
        notes.push(
            "D is negative at this size; interval endpoints ordered for reporting".to_string(),
        );
        (raw_upper, raw_lower)
    } else {
        (raw_lower, raw_upper)
    };
    let (lower_factor, count_lower_clamped) = lower_factor.clamp_zero();
    if upper_factor.cmp_approx(&BigScalar::one()) == std::cmp::Ordering::Greater {
        notes.push("count upper bound exceeds n! and is vacuous".to_string());
    }
    Ok(UniformBoundsReport {
        n,
        pattern_len,
        mode,
        tau: tau.cloned(),
        d2_method,
        count_lower: n_factorial.mul(&lower_factor),
        count_upper: n_factorial.mul(&upper_factor),
        count_lower_clamped,
        n_factorial,
        lambda,
        d1,
        d2,
        big_d,
        tv_count_bound,
        tv_process_bound,
        n1,
        n1_out_of_range,
        notes,
    })
}

fn validate_common(n: u64, len: u64, tau: Option<&Pattern>, method: D2Method) -> Result<()> {
    if len < 3 {
        return Err(Error::invalid(format!(
            "pattern length {len} is below the minimum 3"
        )));
    }
    if len > n {
        return Err(Error::invalid(format!(
            "pattern length {len} exceeds the permutation length {n}"
        )));
    }
    if let Some(t) = tau {
        if t.len() as u64 != len {
            return Err(Error::invalid(format!(
                "pattern {t} has length {}, expected {len}",
                t.len()
            )));
        }
    }
    if method == D2Method::ExactOverlap && tau.is_none() {
        return Err(Error::invalid(
            "the exact-overlap method requires a concrete pattern",
        ));
    }
    Ok(())
}

/// Bounds for classical (arbitrary index set) occurrences of a length-`j`
/// pattern in a uniform random permutation of length `n`.
pub fn uniform_classical_bounds(
    n: u64,
    j: u64,
    tau: Option<&Pattern>,
    d2_method: D2Method,
) -> Result<UniformBoundsReport> {
    validate_common(n, j, tau, d2_method)?;
    if d2_method == D2Method::Series {
        return Err(Error::invalid(
            "the series method applies to consecutive windows only",
        ));
    }
    let lambda = classical_lambda(n, j);
    let d1 = classical_d1(n, j);
    let d2 = match d2_method {
        D2Method::ExactOverlap => classical_exact_d2(n, j, tau.expect("validated"))?,
        D2Method::Crude => classical_crude_d2(n, j)?,
        D2Method::Robbins => classical_robbins_d2(n, j, &lambda),
        D2Method::Series => unreachable!(),
    };
    assemble(
        n,
        j,
        OccurrenceMode::Classical,
        tau,
        d2_method,
        lambda,
        d1,
        d2,
        None,
        false,
        Vec::new(),
    )
}

/// Bounds for consecutive-window occurrences of a length-`m` pattern in a
/// uniform random permutation of length `n`.
pub fn uniform_consecutive_bounds(
    n: u64,
    m: u64,
    tau: Option<&Pattern>,
    d2_method: D2Method,
) -> Result<UniformBoundsReport> {
    validate_common(n, m, tau, d2_method)?;
    if d2_method == D2Method::Robbins {
        return Err(Error::invalid(
            "the robbins method applies to classical occurrences only",
        ));
    }
    if m > MAX_EXACT_PATTERN_LEN {
        return Err(Error::resource(format!(
            "consecutive bounds at m = {m} exceed the exact-arithmetic guard \
             ({MAX_EXACT_PATTERN_LEN})"
        )));
    }
    let mut notes = Vec::new();
    let mf = factorial(m);
    let lambda = BigScalar::from_rational(Rational::from((Integer::from(n - m), mf.clone())));
    let n1 = 2 * (m as i128) * (n as i128) - 3 * (m as i128) * (m as i128) + m as i128;
    let n1_out_of_range = 2 * m - 1 > n;
    if n1_out_of_range {
        notes.push(
            "window-pair count n1 = 2mn - 3m^2 + m is used outside its derivation range \
             (2m - 1 > n) and is retained only as an upper bound"
                .to_string(),
        );
    }
    let d1 = BigScalar::from_rational(Rational::from((
        Integer::from(n1),
        Integer::from(&mf * &mf),
    )));
    let d2 = match d2_method {
        D2Method::ExactOverlap => consecutive_exact_d2(n, m, tau.expect("validated"), &mut notes)?,
        D2Method::Crude => consecutive_crude_d2(n, m, &mut notes)?,
        D2Method::Series => consecutive_series_d2(n, m, &lambda)?,
        D2Method::Robbins => unreachable!(),
    };
    assemble(
        n,
        m,
        OccurrenceMode::Consecutive,
        tau,
        d2_method,
        lambda,
        d1,
        d2,
        Some(n1),
        n1_out_of_range,
        notes,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        Pattern::parse(s).unwrap()
    }

    fn rat(num: i64, den: i64) -> Rational {
        Rational::from((num, den))
    }

    #[test]
    fn classical_minimal_case_is_exact() {
        // n = j = 3: a single index set, C(0,3) = 0.
        let r = uniform_classical_bounds(3, 3, None, D2Method::Crude).unwrap();
        assert_eq!(r.lambda.as_exact(), Some(&rat(1, 6)));
        assert_eq!(r.d1.as_exact(), Some(&rat(1, 36)));
    }

    #[test]
    fn classical_crude_matches_hand_evaluation() {
        // n=6, j=3: d₂ = (C(6,3)/3!)(C(3,1)/1! + C(3,2)/2!) = (20/6)(3 + 3/2).
        let r = uniform_classical_bounds(6, 3, None, D2Method::Crude).unwrap();
        assert_eq!(r.lambda.as_exact(), Some(&rat(10, 3)));
        assert_eq!(r.d1.as_exact(), Some(&rat(95, 9)));
        assert_eq!(r.d2.as_exact(), Some(&rat(15, 1)));
    }

    #[test]
    fn classical_exact_overlap_never_exceeds_crude() {
        for tau in ["123", "132", "213", "231", "312", "321"] {
            let tau = pat(tau);
            let exact =
                uniform_classical_bounds(9, 3, Some(&tau), D2Method::ExactOverlap).unwrap();
            let crude = uniform_classical_bounds(9, 3, Some(&tau), D2Method::Crude).unwrap();
            assert_ne!(
                exact.d2.cmp_approx(&crude.d2),
                std::cmp::Ordering::Greater,
                "exact d2 exceeded crude d2 for {}",
                exact.tau.unwrap()
            );
            assert!(exact.d2.signum() > 0);
        }
    }

    #[test]
    fn published_classical_interval_endpoints() {
        // (n, j) = (1000, 133): D ≈ 5.6e−34, so both endpoints agree with
        // n! e^{−λ} ≈ n! to many digits.
        let r = uniform_classical_bounds(1000, 133, None, D2Method::Crude).unwrap();
        assert_eq!(r.n_factorial.sci6(), "4.02387e2567");
        assert_eq!(r.count_upper.sci(5), "4.0239e2567");
        assert_eq!(r.count_lower.sci6(), "4.02387e2567");
        assert!(!r.count_lower_clamped);
        let robbins = uniform_classical_bounds(1000, 133, None, D2Method::Robbins).unwrap();
        assert_eq!(robbins.count_upper.sci(5), "4.0239e2567");
        // The crude and robbins error terms differ but are both tiny here.
        assert!(robbins.big_d.to_f64() < 1e-30);
        assert!(r.big_d.to_f64() < 1e-30);
    }

    #[test]
    fn robbins_closed_form_agrees_with_direct_float_evaluation() {
        let r = uniform_classical_bounds(100, 36, None, D2Method::Robbins).unwrap();
        let (sign, log10) = r.d2.to_log_parts();
        assert_eq!(sign, 1);
        let (_, llam) = r.lambda.to_log_parts();
        let expect = llam.to_f64() - (2.0 * std::f64::consts::PI).log10()
            + (1.0 / 12.0 - 3.0 / 13.0 + 2.0 * 64f64.sqrt()) * std::f64::consts::E.log10()
            + 36f64.ln().log10();
        assert!((log10.to_f64() - expect).abs() < 1e-9);
    }

    #[test]
    fn classical_log_path_smoke() {
        // j beyond the exact guard: λ and d₁ go to log space; robbins is
        // the only d₂ evaluation available.
        let r = uniform_classical_bounds(1_000_000, 25_000, None, D2Method::Robbins).unwrap();
        assert!(!r.lambda.is_exact());
        assert!(r.d1.signum() >= 0);
        assert!(
            r.count_lower.to_f64() == 0.0
                || r.count_lower.cmp_approx(&r.count_upper) != std::cmp::Ordering::Greater
        );
        let err = uniform_classical_bounds(1_000_000, 25_000, None, D2Method::Crude);
        assert!(matches!(err, Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn consecutive_exact_overlap_matches_hand_evaluation() {
        // τ = 123, n = 10: L̄₁ = L̄₂ = 1, so
        // d̄₂ = (n−5)·2/5! + (n−4)·2/4! = 1/12 + 1/2 = 7/12,
        // n₁ = 36, d̄₁ = 1, D = (6/7)(1 + 7/12) = 19/14.
        let tau = pat("123");
        let r = uniform_consecutive_bounds(10, 3, Some(&tau), D2Method::ExactOverlap).unwrap();
        assert_eq!(r.lambda.as_exact(), Some(&rat(7, 6)));
        assert_eq!(r.n1, Some(36));
        assert_eq!(r.d1.as_exact(), Some(&rat(1, 1)));
        assert_eq!(r.d2.as_exact(), Some(&rat(7, 12)));
        assert_eq!(r.big_d.as_exact(), Some(&rat(19, 14)));
        assert_eq!(r.tv_count_bound.as_exact(), Some(&rat(19, 7)));
        assert!(!r.n1_out_of_range);
    }

    #[test]
    fn consecutive_series_reproduces_published_row() {
        // (n, m) = (100, 6) from the published consecutive-pattern table.
        let r = uniform_consecutive_bounds(100, 6, None, D2Method::Series).unwrap();
        assert_eq!(r.count_lower.sci6(), "3.98735e157");
        assert_eq!(r.count_upper.sci6(), "1.23934e158");
        assert_eq!(r.n_factorial.sci6(), "9.33262e157");
    }

    #[test]
    fn consecutive_crude_matches_hand_evaluation() {
        // n = 10, m = 3: Σ_s (n−6+s) s! = 5·1 + 6·2 = 17, over m!² = 36.
        let r = uniform_consecutive_bounds(10, 3, None, D2Method::Crude).unwrap();
        assert_eq!(r.d2.as_exact(), Some(&rat(17, 36)));
        assert!(r.notes.iter().any(|s| s.contains("crude window sum")));
    }

    #[test]
    fn small_n_flags_n1_and_allows_negative_terms() {
        // n = m = 3: n₁ = 2·9 − 27 + 3 = −6 < 0 and 2m−1 = 5 > 3.
        let tau = pat("123");
        let r = uniform_consecutive_bounds(3, 3, Some(&tau), D2Method::ExactOverlap).unwrap();
        assert_eq!(r.n1, Some(-6));
        assert!(r.n1_out_of_range);
        assert!(r.lambda.is_zero());
        assert!(r.d1.signum() < 0);
        assert!(r.notes.iter().any(|s| s.contains("n1")));
    }

    #[test]
    fn method_and_domain_validation() {
        let tau = pat("123");
        assert!(matches!(
            uniform_classical_bounds(10, 2, None, D2Method::Crude),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            uniform_classical_bounds(3, 4, None, D2Method::Crude),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            uniform_classical_bounds(10, 3, None, D2Method::ExactOverlap),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            uniform_classical_bounds(10, 3, Some(&tau), D2Method::Series),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            uniform_consecutive_bounds(10, 3, Some(&tau), D2Method::Robbins),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            uniform_consecutive_bounds(10, 4, Some(&tau), D2Method::ExactOverlap),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn d2_method_round_trips_through_strings() {
        for m in [
            D2Method::ExactOverlap,
            D2Method::Crude,
            D2Method::Robbins,
            D2Method::Series,
        ] {
            assert_eq!(m.as_str().parse::<D2Method>().unwrap(), m);
        }
        assert!("fancy".parse::<D2Method>().is_err());
    }

    #[test]
    fn reports_serialize_with_display_forms() {
        let tau = pat("123");
        let r = uniform_consecutive_bounds(10, 3, Some(&tau), D2Method::ExactOverlap).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.contains("\"7/6\""));
        assert!(json.contains("\"consecutive\""));
        let back: UniformBoundsReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.lambda.as_exact(), Some(&rat(7, 6)));
    }
}
