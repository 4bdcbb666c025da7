//! Which asymptotic q-regime a finite `(n, m, q, |inv|)` instance sits in.
//!
//! The process-level approximation is driven by four alternative
//! sufficient conditions relating `q` to `n` through the pattern's
//! inversion count:
//!
//! 1. `q ≤ n^{−1/|inv|}` — the small-`q` power regime;
//! 2. `q ≥ n^{1/(C(m,2)−|inv|)}` — the large-`q` power regime;
//! 3. `|inv| ≤ −log n / log q` with `q < 1`;
//! 4. `|inv| ≥ −log n / log q + m²/2` with `q > 1`.
//!
//! Each is decided exactly by clearing logarithms: (1) is `n·q^{|inv|} ≤ 1`,
//! (2) is `q^{C(m,2)−|inv|} ≥ n`, (3) is `q < 1` and `n·q^{|inv|} ≥ 1`,
//! and (4) is `q > 1` and `n²·q^{2|inv|} ≥ q^{m²}` — all rational
//! comparisons when `q` is rational, so the report never depends on float
//! rounding of a logarithm.  The two critical parameter values
//! `n^{−1/|inv|}` and `n^{1/(C(m,2)−|inv|)}` are reported in log₁₀ form;
//! for monotone patterns (`|inv| ∈ {0, C(m,2)}`) the corresponding
//! exponent is undefined and the report flags the special case instead.

use rug::Float;
use serde::{Deserialize, Serialize};

use pav_core::{Error, Result};

use crate::scalar::{q_power, BigScalar, QParam, LOG_PRECISION};

/// The four regime conditions and the critical parameter values.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimeReport {
    pub n: u64,
    pub m: u64,
    pub q: QParam,
    pub inv_count: u64,
    /// `q ≤ n^{−1/|inv|}`, decided as `n·q^{|inv|} ≤ 1`.
    pub small_q_power: bool,
    /// `q ≥ n^{1/(C(m,2)−|inv|)}`, decided as `q^{C(m,2)−|inv|} ≥ n`.
    pub large_q_power: bool,
    /// `q < 1` and `|inv| ≤ −log n/log q`, decided as `n·q^{|inv|} ≥ 1`.
    pub small_q_log: bool,
    /// `q > 1` and `|inv| ≥ −log n/log q + m²/2`, decided as
    /// `n²·q^{2|inv|} ≥ q^{m²}`.
    pub large_q_log: bool,
    /// `n^{−1/|inv|}`; `None` when `|inv| = 0`.
    pub critical_q_small: Option<BigScalar>,
    /// `n^{1/(C(m,2)−|inv|)}`; `None` when `|inv| = C(m,2)`.
    pub critical_q_large: Option<BigScalar>,
    /// Whether `|inv| ∈ {0, C(m,2)}` leaves a critical exponent undefined.
    pub monotone_special_case: bool,
    /// Human-readable summary of which conditions hold.
    pub label: String,
    pub notes: Vec<String>,
}

/// Decides the four regime conditions for a finite instance and reports
/// the critical `q` values.
pub fn mallows_regime(n: u64, m: u64, q: &QParam, inv_count: u64) -> Result<RegimeReport> {
    if n == 0 || m == 0 {
        return Err(Error::invalid("n and m must be >= 1"));
    }
    let max_inv = (m as u128) * (m as u128 - 1) / 2;
    if inv_count as u128 > max_inv {
        return Err(Error::invalid(format!(
            "inversion count {inv_count} exceeds C({m}, 2) = {max_inv}"
        )));
    }
    q.clone().validated()?;

    let mut notes = Vec::new();
    let one = BigScalar::one();
    let n_scalar = BigScalar::from_u64(n);
    let q_scalar = q.to_scalar();
    let q_below_one = q_scalar.cmp_approx(&one) == std::cmp::Ordering::Less;
    let q_above_one = q_scalar.cmp_approx(&one) == std::cmp::Ordering::Greater;

    // n·q^{|inv|} against 1 decides both small-q conditions.
    let n_q_inv = n_scalar.mul(&q_power(q, inv_count as u128));
    let small_q_power = n_q_inv.cmp_approx(&one) != std::cmp::Ordering::Greater;
    let small_q_log = q_below_one && n_q_inv.cmp_approx(&one) != std::cmp::Ordering::Less;

    let co_inv = max_inv - inv_count as u128;
    let large_q_power =
        q_power(q, co_inv).cmp_approx(&n_scalar) != std::cmp::Ordering::Less;
    let lhs = n_scalar.mul(&n_scalar).mul(&q_power(q, 2 * inv_count as u128));
    let rhs = q_power(q, (m as u128) * (m as u128));
    let large_q_log = q_above_one && lhs.cmp_approx(&rhs) != std::cmp::Ordering::Less;

    let log10_n = Float::with_val(LOG_PRECISION, n).log10();
    let critical_q_small = if inv_count == 0 {
        None
    } else {
        let exponent = Float::with_val(LOG_PRECISION, inv_count);
        Some(BigScalar::from_log10(1, -log10_n.clone() / exponent))
    };
    let critical_q_large = if co_inv == 0 {
        None
    } else {
        let exponent = Float::with_val(LOG_PRECISION, rug::Integer::from(co_inv));
        Some(BigScalar::from_log10(1, log10_n / exponent))
    };
    let monotone_special_case = inv_count == 0 || co_inv == 0;
    if monotone_special_case {
        notes.push(format!(
            "the pattern is monotone (|inv| = {inv_count} of C({m},2) = {max_inv}); \
             the corresponding critical exponent is undefined"
        ));
    }

    let held: Vec<&str> = [
        (small_q_power, "small-q power"),
        (large_q_power, "large-q power"),
        (small_q_log, "small-q log"),
        (large_q_log, "large-q log"),
    ]
    .into_iter()
    .filter_map(|(held, name)| held.then_some(name))
    .collect();
    let label = if held.is_empty() {
        "no regime condition holds".to_string()
    } else {
        format!("conditions held: {}", held.join(", "))
    };

    Ok(RegimeReport {
        n,
        m,
        q: q.clone(),
        inv_count,
        small_q_power,
        large_q_power,
        small_q_log,
        large_q_log,
        critical_q_small,
        critical_q_large,
        monotone_special_case,
        label,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_rat(num: i64, den: i64) -> QParam {
        QParam::from_ratio(num, den).unwrap()
    }

    #[test]
    fn critical_values_for_the_worked_patterns() {
        // 2341 has 3 inversions: small-q critical n^{−1/3}.
        let r = mallows_regime(100, 4, &QParam::one(), 3).unwrap();
        let crit = r.critical_q_small.unwrap().to_f64();
        assert!((crit - 100f64.powf(-1.0 / 3.0)).abs() < 1e-12);
        // C(4,2) − 3 = 3: large-q critical n^{1/3}.
        let crit = r.critical_q_large.unwrap().to_f64();
        assert!((crit - 100f64.powf(1.0 / 3.0)).abs() < 1e-12);

        // 23451 has 4 inversions: small-q critical exponent −1/4.
        let r = mallows_regime(100, 5, &QParam::one(), 4).unwrap();
        let crit = r.critical_q_small.unwrap().to_f64();
        assert!((crit - 100f64.powf(-0.25)).abs() < 1e-12);
    }

    #[test]
    fn boundary_instance_straddles_the_small_q_conditions() {
        // Just below n^{−1/3} ≈ 0.21544: the power condition holds.
        let below = mallows_regime(100, 4, &q_rat(21, 100), 3).unwrap();
        assert!(below.small_q_power);
        assert!(!below.small_q_log);
        // Just above: the complementary log condition takes over.
        let above = mallows_regime(100, 4, &q_rat(22, 100), 3).unwrap();
        assert!(!above.small_q_power);
        assert!(above.small_q_log);
        // At the float rendering of the critical point, one of the two
        // holds either way.
        let at = QParam::from_f64(100f64.powf(-1.0 / 3.0)).unwrap();
        let r = mallows_regime(100, 4, &at, 3).unwrap();
        assert!(r.small_q_power || r.small_q_log);
    }

    #[test]
    fn uniform_parameter_satisfies_nothing() {
        let r = mallows_regime(100, 4, &QParam::one(), 3).unwrap();
        assert!(
            !r.small_q_power && !r.large_q_power && !r.small_q_log && !r.large_q_log
        );
        assert!(r.label.contains("no regime condition"));
    }

    #[test]
    fn large_q_conditions_are_independent_alternatives() {
        // n = 50, m = 4, inv = 3: q = 2 meets the log condition
        // (2500·64 ≥ 2¹⁶) but not the power one (2³ < 50); q = 10 meets
        // the power condition (10³ ≥ 50) but not the log one.
        let q2 = mallows_regime(50, 4, &q_rat(2, 1), 3).unwrap();
        assert!(q2.large_q_log && !q2.large_q_power);
        let q10 = mallows_regime(50, 4, &q_rat(10, 1), 3).unwrap();
        assert!(q10.large_q_power && !q10.large_q_log);
    }

    #[test]
    fn monotone_patterns_flag_the_undefined_exponent() {
        let incr = mallows_regime(100, 3, &q_rat(1, 2), 0).unwrap();
        assert!(incr.monotone_special_case);
        assert!(incr.critical_q_small.is_none());
        assert!(incr.critical_q_large.is_some());
        let decr = mallows_regime(100, 3, &q_rat(1, 2), 3).unwrap();
        assert!(decr.monotone_special_case);
        assert!(decr.critical_q_large.is_none());
        assert!(decr.notes[0].contains("monotone"));
    }

    #[test]
    fn input_validation() {
        assert!(mallows_regime(100, 4, &QParam::one(), 7).is_err());
        assert!(mallows_regime(0, 4, &QParam::one(), 3).is_err());
    }
}
