//! Closed-form Mallows bounds for monotone consecutive patterns.
//!
//! A monotone window has exactly one witness at every overlap distance, so
//! the overlap sums collapse: the increasing pattern `12…m` gives
//! `λ = (n−m)/I_m(q)`, `b₁ = n₁/I_m(q)²`, and
//! `b₂ = n₂ · Σ_{s=1}^{m−1} 1/I_{2m−s}(q)` with the flat multiplier
//! `n₂ = 2mn − 3m² + 3m − 2n = 2 Σ_{s=1}^{m−1} (n − 2m + s)`.  The
//! decreasing pattern `m…21` multiplies the `λ` and `b₁` numerators by
//! `q^{C(m,2)}` and each `b₂` numerator by `q^{C(2m−s,2)}`, matching its
//! witness inversion counts.
//!
//! Two conventions are worth flagging.  The decreasing-case `b₁` numerator
//! carries the single power `q^{C(m,2)}` as stated, not the squared power
//! `q^{2·C(m,2)}` that the general pattern formula `n₁ q^{2|inv|}/I_m²`
//! would give; a note records the squared-power value.  Under the reversal
//! identity `I_k(q) = q^{C(k,2)} I_k(1/q)`, the decreasing bounds at `q`
//! coincide with the increasing bounds at `1/q` for `λ` and `b₂` — the
//! single-power `b₁` is the one quantity that breaks this symmetry.
//!
//! Because no witness enumeration is needed, these forms stay cheap for
//! pattern lengths far beyond what the general evaluation can enumerate.

use std::fmt;
use std::str::FromStr;

use rug::Integer;
use serde::{Deserialize, Serialize};

use pav_core::{Error, Pattern, Permutation, Result};
use pav_overlap::InversionPolynomial;

use crate::invpoly::inversion_poly_value;
use crate::mallows::{
    aggregate_b2, probability_interval, relative_mass_factor, B2Term, MallowsBoundsReport,
};
use crate::scalar::{q_power, BigScalar, QParam};

/// Largest pattern length accepted before the `m − 1`-term window sum (and
/// its `I_{2m−s}` evaluations) is considered too expensive.
const MAX_MONOTONE_PATTERN_LEN: u64 = 2_000;

/// Which monotone pattern the bounds are for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotoneDirection {
    /// The increasing pattern `12…m` (no inversions).
    Increasing,
    /// The decreasing pattern `m…21` (all `C(m,2)` inversions).
    Decreasing,
}

impl MonotoneDirection {
    pub fn as_str(self) -> &'static str {
        match self {
            MonotoneDirection::Increasing => "increasing",
            MonotoneDirection::Decreasing => "decreasing",
        }
    }
}

impl fmt::Display for MonotoneDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MonotoneDirection {
    type Err = Error;

    fn from_str(s: &str) -> Result<MonotoneDirection> {
        match s {
            "increasing" => Ok(MonotoneDirection::Increasing),
            "decreasing" => Ok(MonotoneDirection::Decreasing),
            other => Err(Error::invalid(format!(
                "unknown direction `{other}` (expected `increasing` or `decreasing`)"
            ))),
        }
    }
}

/// `C(k, 2) = k(k−1)/2` without overflow for any `u64` input.
fn choose2(k: u64) -> u128 {
    (k as u128) * (k as u128 - 1) / 2
}

/// Closed-form consecutive-pattern bounds for the monotone patterns under
/// Mallows(q).  The report has the same shape as the general evaluation;
/// `n2` carries the flat `b₂` multiplier and `b2` is the flat-multiplier
/// form `n₂ · Σ_s q^{…}/I_{2m−s}(q)`.
pub fn monotone_mallows_bounds(
    n: u64,
    m: u64,
    q: &QParam,
    direction: MonotoneDirection,
) -> Result<MallowsBoundsReport> {
    if m < 2 {
        return Err(Error::invalid(format!(
            "pattern length {m} is below the minimum 2"
        )));
    }
    if m > n {
        return Err(Error::invalid(format!(
            "pattern length {m} exceeds the permutation length {n}"
        )));
    }
    if m > MAX_MONOTONE_PATTERN_LEN {
        return Err(Error::resource(format!(
            "pattern length {m} exceeds the supported maximum {MAX_MONOTONE_PATTERN_LEN} \
             for the window sum"
        )));
    }
    q.clone().validated()?;

    let mut notes = Vec::new();
    let identity = Permutation::identity(m as usize)?;
    let tau = match direction {
        MonotoneDirection::Increasing => Pattern::new(identity),
        MonotoneDirection::Decreasing => Pattern::new(identity.reverse()),
    };
    let inv_count = choose2(m);
    let report_inv = match direction {
        MonotoneDirection::Increasing => 0,
        MonotoneDirection::Decreasing => inv_count as u64,
    };

    let i_m = inversion_poly_value(m, q)?;
    let i_m_sq = i_m.mul(&i_m);
    let q_top = match direction {
        MonotoneDirection::Increasing => BigScalar::one(),
        MonotoneDirection::Decreasing => q_power(q, inv_count),
    };

    let lambda = BigScalar::from_u64(n - m).mul(&q_top).div(&i_m)?;
    let lambda_mean = BigScalar::from_u64(n - m + 1).mul(&q_top).div(&i_m)?;

    let n1 = 2 * (m as i128) * (n as i128) - 3 * (m as i128) * (m as i128) + m as i128;
    let n1_out_of_range = 2 * m - 1 > n;
    if n1_out_of_range {
        notes.push(
            "window-pair count n1 = 2mn - 3m^2 + m is used outside its derivation range \
             (2m - 1 > n) and is retained only as an upper bound"
                .to_string(),
        );
    }
    // The stated decreasing-case b1 scales the pair count by the single
    // power q^{C(m,2)}; the companions keep the generic squared power so
    // their meaning matches the general evaluation.
    let b1 = BigScalar::from_rational(Integer::from(n1).into())
        .mul(&q_top)
        .div(&i_m_sq)?;
    if direction == MonotoneDirection::Decreasing && !q.is_one() {
        let squared = BigScalar::from_rational(Integer::from(n1).into())
            .mul(&q_power(q, 2 * inv_count))
            .div(&i_m_sq)?;
        notes.push(format!(
            "decreasing-case b1 uses the single power q^(m(m-1)/2) as stated; \
             the squared-power analogue of the general formula would be {squared}"
        ));
    }
    let q_top_sq = match direction {
        MonotoneDirection::Increasing => BigScalar::one(),
        MonotoneDirection::Decreasing => q_power(q, 2 * inv_count),
    };
    let b1_companion = |count: i128| -> Result<BigScalar> {
        BigScalar::from_rational(Integer::from(count).into())
            .mul(&q_top_sq)
            .div(&i_m_sq)
    };
    let boundary_count =
        2 * (m as i128 - 1) * (n as i128 - 2 * m as i128) + (m as i128 - 1) * (3 * m as i128 - 4);
    let b1_boundary = b1_companion(boundary_count)?;
    let b1_exact_pairs = b1_companion(crate::mallows::neighborhood_pair_count(n, m))?;

    let mut per_s = Vec::new();
    let mut value_sum = BigScalar::zero();
    for s in 1..m {
        let witness_len = 2 * m - s;
        let witness_inv = match direction {
            MonotoneDirection::Increasing => 0,
            MonotoneDirection::Decreasing => choose2(witness_len),
        };
        let value = q_power(q, witness_inv).div(&inversion_poly_value(witness_len, q)?)?;
        value_sum = value_sum.add(&value);
        let weight_literal = n as i128 - 2 * m as i128 + s as i128;
        per_s.push(B2Term {
            s,
            poly: InversionPolynomial::from_coefficients([(
                u64::try_from(witness_inv).unwrap_or(u64::MAX),
                1,
            )]),
            value,
            weight_literal,
            weight_ordered: 2 * weight_literal,
            weight_worked: 2 * (n as i128 - m as i128),
            weight_exact: 2 * (weight_literal + 1).max(0),
        });
    }
    let agg = aggregate_b2(&per_s);
    if agg.negative_weight {
        notes.push(
            "some window-pair factors (n - 2m + s) are negative; the literal and ordered \
             sums are used as stated"
                .to_string(),
        );
    }

    let n2 = 2 * (m as i128) * (n as i128) - 3 * (m as i128) * (m as i128) + 3 * (m as i128)
        - 2 * (n as i128);
    let b2 = BigScalar::from_rational(Integer::from(n2).into()).mul(&value_sum);

    let b3 = BigScalar::zero();
    let err_sum = b1.add(&b2).add(&b3);
    let tv_count_bound = BigScalar::from_u64(2).mul(&err_sum);
    let err = err_sum.mul(&relative_mass_factor(&lambda)?);
    let exp_neg = lambda.exp_neg();
    let (avoid_prob_lower, avoid_prob_upper, avoid_lower_clamped, avoid_upper_clamped) =
        probability_interval(&exp_neg, &err, &mut notes);

    Ok(MallowsBoundsReport {
        n,
        m,
        q: q.clone(),
        tau: Some(tau),
        inv_count: report_inv,
        lambda,
        lambda_mean,
        b1,
        b1_boundary,
        b1_exact_pairs,
        b2,
        b2_literal: agg.literal,
        b2_ordered: agg.ordered,
        b2_exact_pairs: agg.exact,
        b3,
        tv_count_bound,
        avoid_prob_lower,
        avoid_prob_upper,
        avoid_lower_clamped,
        avoid_upper_clamped,
        per_s,
        n1,
        n1_out_of_range,
        n2: Some(n2),
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mallows::mallows_consecutive_bounds;
    use rug::Rational;

    fn q_rat(num: i64, den: i64) -> QParam {
        QParam::from_ratio(num, den).unwrap()
    }

    fn rat(num: i64, den: i64) -> Rational {
        Rational::from((num, den))
    }

    #[test]
    fn increasing_uniform_case_closed_form() {
        let r = monotone_mallows_bounds(10, 3, &QParam::one(), MonotoneDirection::Increasing)
            .unwrap();
        assert_eq!(r.lambda.as_exact(), Some(&rat(7, 6)));
        assert_eq!(r.n2, Some(22));
        // b2 = 22 · (1/I₄ + 1/I₅) = 22 · (1/24 + 1/120) = 11/10.
        assert_eq!(r.b2.as_exact(), Some(&rat(11, 10)));
        assert_eq!(r.n1, 36);
        assert_eq!(r.b1.as_exact(), Some(&rat(36, 36)));
    }

    #[test]
    fn flat_multiplier_matches_window_sum_identity() {
        // n₂ = 2 Σ_{s=1}^{m−1} (n − 2m + s) for several (n, m).
        for (n, m) in [(10u64, 3u64), (12, 4), (20, 5), (9, 4)] {
            let r = monotone_mallows_bounds(n, m, &QParam::one(), MonotoneDirection::Increasing)
                .unwrap();
            let direct: i128 = 2 * (1..m)
                .map(|s| n as i128 - 2 * m as i128 + s as i128)
                .sum::<i128>();
            assert_eq!(r.n2, Some(direct), "n2 mismatch at ({n}, {m})");
        }
    }

    #[test]
    fn decreasing_equals_increasing_at_q_one() {
        let inc =
            monotone_mallows_bounds(10, 4, &QParam::one(), MonotoneDirection::Increasing).unwrap();
        let dec =
            monotone_mallows_bounds(10, 4, &QParam::one(), MonotoneDirection::Decreasing).unwrap();
        assert_eq!(inc.lambda.as_exact(), dec.lambda.as_exact());
        assert_eq!(inc.b1.as_exact(), dec.b1.as_exact());
        assert_eq!(inc.b2.as_exact(), dec.b2.as_exact());
        assert_eq!(inc.tv_count_bound.as_exact(), dec.tv_count_bound.as_exact());
    }

    #[test]
    fn per_s_terms_match_general_evaluation() {
        // The general overlap-table evaluation of 12…m (and m…21) produces
        // the same per-s values; only the flat multiplier differs.
        let q = q_rat(1, 2);
        let inc = monotone_mallows_bounds(12, 3, &q, MonotoneDirection::Increasing).unwrap();
        let via_table =
            mallows_consecutive_bounds(12, 3, &q, &Pattern::parse("123").unwrap()).unwrap();
        for (a, b) in inc.per_s.iter().zip(via_table.per_s.iter()) {
            assert_eq!(a.s, b.s);
            assert_eq!(a.value.as_exact(), b.value.as_exact());
            assert_eq!(a.poly, b.poly);
        }
        assert_eq!(inc.b2_ordered.as_exact(), via_table.b2_ordered.as_exact());

        let q = q_rat(2, 1);
        let dec = monotone_mallows_bounds(10, 4, &q, MonotoneDirection::Decreasing).unwrap();
        let via_table =
            mallows_consecutive_bounds(10, 4, &q, &Pattern::parse("4321").unwrap()).unwrap();
        for (a, b) in dec.per_s.iter().zip(via_table.per_s.iter()) {
            assert_eq!(a.value.as_exact(), b.value.as_exact(), "s = {}", a.s);
            assert_eq!(a.poly, b.poly);
        }
        assert_eq!(dec.lambda.as_exact(), via_table.lambda.as_exact());
    }

    #[test]
    fn decreasing_b1_uses_single_stated_power() {
        // m = 3, q = 1/2: b1 = 36 · (1/2)³ / I₃(1/2)² = 36·8/441 = 32/49,
        // where I₃(1/2) = 21/8.
        let r =
            monotone_mallows_bounds(10, 3, &q_rat(1, 2), MonotoneDirection::Decreasing).unwrap();
        assert_eq!(r.b1.as_exact(), Some(&rat(32, 49)));
        assert!(r.notes.iter().any(|n| n.contains("single power")));
    }

    #[test]
    fn reversal_symmetry_for_lambda_and_b2() {
        // I_k(q) = q^{C(k,2)} I_k(1/q) makes the decreasing bounds at q
        // equal the increasing bounds at 1/q — except b1, whose stated
        // single power breaks the symmetry.
        let dec = monotone_mallows_bounds(10, 4, &q_rat(2, 1), MonotoneDirection::Decreasing)
            .unwrap();
        let inc = monotone_mallows_bounds(10, 4, &q_rat(1, 2), MonotoneDirection::Increasing)
            .unwrap();
        assert_eq!(dec.lambda.as_exact(), inc.lambda.as_exact());
        assert_eq!(dec.b2.as_exact(), inc.b2.as_exact());
        assert_ne!(dec.b1.as_exact(), inc.b1.as_exact());
    }

    #[test]
    fn flat_multiplier_dominates_per_s_weights() {
        // With all window factors positive, n₂ ≥ 2(n−2m+s) for each s, so
        // the flat-multiplier b2 dominates the ordered window sum.
        let r = monotone_mallows_bounds(20, 4, &q_rat(1, 2), MonotoneDirection::Increasing)
            .unwrap();
        assert_eq!(
            r.b2_ordered.cmp_approx(&r.b2),
            std::cmp::Ordering::Less
        );
    }

    #[test]
    fn long_patterns_stay_cheap() {
        let r = monotone_mallows_bounds(100, 15, &q_rat(1, 2), MonotoneDirection::Increasing)
            .unwrap();
        assert_eq!(r.per_s.len(), 14);
        assert!(r.lambda.to_f64() > 0.0);
        assert!(r.b2.to_f64() > 0.0);
        let dec =
            monotone_mallows_bounds(100, 15, &q_rat(1, 2), MonotoneDirection::Decreasing).unwrap();
        assert_eq!(dec.inv_count, 105);
    }

    #[test]
    fn small_n_negative_multiplier_is_noted() {
        // n = 4, m = 3: n₂ = −2 < 0; the interval machinery reorders the
        // endpoints and says so.
        let r =
            monotone_mallows_bounds(4, 3, &QParam::one(), MonotoneDirection::Increasing).unwrap();
        assert_eq!(r.n2, Some(-2));
        assert!(r.b2.signum() < 0);
        assert!(!r.notes.is_empty());
        assert!(r.avoid_prob_lower.to_f64() <= r.avoid_prob_upper.to_f64());
    }

    #[test]
    fn validation_and_direction_strings() {
        assert!(matches!(
            monotone_mallows_bounds(10, 1, &QParam::one(), MonotoneDirection::Increasing),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            monotone_mallows_bounds(3, 4, &QParam::one(), MonotoneDirection::Increasing),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            monotone_mallows_bounds(10_000, 5_000, &QParam::one(), MonotoneDirection::Increasing),
            Err(Error::ResourceLimit(_))
        ));
        assert_eq!(
            "increasing".parse::<MonotoneDirection>().unwrap(),
            MonotoneDirection::Increasing
        );
        assert_eq!(MonotoneDirection::Decreasing.to_string(), "decreasing");
        assert!("sideways".parse::<MonotoneDirection>().is_err());
    }
}
