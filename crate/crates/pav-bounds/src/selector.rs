//! Pattern-length selection: how long a consecutive pattern must be for
//! its expected occurrence count in a length-`n` permutation to fall to a
//! target `t`.
//!
//! Two selectors are reported side by side.  The display formula
//! `M(t, n) = ⌊log(n/t) / (loglog(n/t) − logloglog(n/t)) − 1/2⌋`
//! approximates the inverse of `m ↦ (n−m)/m!` through Stirling-type
//! asymptotics, and undershoots noticeably at desk scales; the exact
//! selector — the smallest `m` with `(n−m)/m! ≤ t` — is the quantity the
//! formula targets.  Reporting both keeps the gap visible instead of
//! pretending the asymptotic already matches.

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};

use pav_core::{Error, Result};

use crate::scalar::{factorial, LOG_PRECISION};

/// Both pattern-length selectors for a size/target pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternLengthSelection {
    pub n: u64,
    /// The target expected count `t > 0`.
    pub t: f64,
    /// The floor-formula value `M(t, n)`.
    pub formula_m: u64,
    /// The smallest `m ≥ 1` with `(n−m)/m! ≤ t` (exact comparison).
    pub exact_m: u64,
    /// The pre-floor value of the display formula, for trend plots.
    pub formula_real: f64,
}

/// Evaluates the asymptotic pattern-length formula and the exact
/// `(n−m)/m! ≤ t` selector.  The formula needs `n/t > e^e` so its nested
/// logarithms are positive.
pub fn consecutive_pattern_length(n: u64, t: f64) -> Result<PatternLengthSelection> {
    if n == 0 {
        return Err(Error::invalid("the permutation length n must be >= 1"));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::invalid(format!(
            "the target expected count t = {t} must be a positive finite number"
        )));
    }
    let ratio = Float::with_val(LOG_PRECISION, n) / Float::with_val(LOG_PRECISION, t);
    let e_to_e = Float::with_val(LOG_PRECISION, 1).exp().exp();
    if ratio <= e_to_e {
        return Err(Error::invalid(format!(
            "n/t = {} must exceed e^e ≈ 15.154 so that log log log(n/t) is positive",
            ratio.to_f64()
        )));
    }

    let l1 = ratio.ln();
    let l2 = l1.clone().ln();
    let l3 = l2.clone().ln();
    let formula = l1 / (l2 - l3) - 0.5f64;
    let formula_real = formula.to_f64();
    let formula_m = formula
        .floor()
        .to_integer()
        .and_then(|i| i.to_u64())
        .ok_or_else(|| Error::invalid("the pattern-length formula produced no usable value"))?;

    // Exact selector: (n−m)/m! is strictly decreasing in m and reaches 0
    // at m = n, so the loop always terminates.
    let t_exact = Rational::from_f64(t)
        .ok_or_else(|| Error::invalid("the target t is not representable"))?;
    let mut exact_m = 1u64;
    while exact_m < n {
        let expected = Rational::from((n - exact_m, 1u64)) / factorial(exact_m);
        if expected <= t_exact {
            break;
        }
        exact_m += 1;
    }

    Ok(PatternLengthSelection {
        n,
        t,
        formula_m,
        exact_m,
        formula_real,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values_across_five_decades() {
        let expect = [(100u64, 3u64), (1_000, 4), (10_000, 5), (100_000, 6), (1_000_000, 7)];
        for (n, m) in expect {
            let sel = consecutive_pattern_length(n, 1.0).unwrap();
            assert_eq!(sel.formula_m, m, "formula M(1, {n})");
        }
    }

    #[test]
    fn exact_selector_values() {
        let expect = [(100u64, 5u64), (1_000, 7), (10_000, 8), (100_000, 9)];
        for (n, m) in expect {
            let sel = consecutive_pattern_length(n, 1.0).unwrap();
            assert_eq!(sel.exact_m, m, "exact selector at n = {n}");
        }
        // n = 100: (100−5)/120 = 95/120 ≤ 1 < (100−4)/24 = 4.
        let sel = consecutive_pattern_length(100, 1.0).unwrap();
        assert_eq!(sel.exact_m, 5);
    }

    #[test]
    fn selectors_differ_at_desk_scale() {
        // The asymptotic formula runs well behind the exact inverse here —
        // the gap is the point of reporting both.
        for n in [100u64, 1_000, 10_000] {
            let sel = consecutive_pattern_length(n, 1.0).unwrap();
            assert!(sel.formula_m < sel.exact_m);
        }
    }

    #[test]
    fn fractional_targets_shift_the_ratio() {
        let sel = consecutive_pattern_length(100, 0.5).unwrap();
        assert_eq!(sel.formula_m, 4); // n/t = 200
        assert!(sel.exact_m >= 5);
        let tight = consecutive_pattern_length(1_000, 10.0).unwrap();
        assert_eq!(tight.n, 1_000); // n/t = 100, same formula input as (100, 1)
        assert_eq!(tight.formula_m, 3);
    }

    #[test]
    fn domain_violations_name_the_constraint() {
        let err = consecutive_pattern_length(15, 1.0).unwrap_err();
        assert!(matches!(&err, Error::InvalidInput(msg) if msg.contains("e^e")));
        assert!(consecutive_pattern_length(16, 1.0).is_ok());
        assert!(consecutive_pattern_length(100, 0.0).is_err());
        assert!(consecutive_pattern_length(100, -1.0).is_err());
        assert!(consecutive_pattern_length(100, f64::NAN).is_err());
        assert!(consecutive_pattern_length(0, 1.0).is_err());
    }
}
