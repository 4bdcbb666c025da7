//! The fixed-point (derangement) bound: Poisson(1) approximation of the
//! number of fixed points of a uniform permutation.
//!
//! The number of fixed points has mean exactly 1, and the Chen–Stein terms
//! evaluate in closed form: `b₁ = 2/n`, `b₂ = 1/n`, `b₃ = 0`, giving
//! `d_TV ≤ 3(1 − e⁻¹)/n` — one of the rare cases where every constant is
//! explicit and tiny.  The induced two-sided bound on the derangement count
//! is `n! e⁻¹ ∓ 3(n−1)!(1 − e⁻¹)`, and the report carries the exact
//! derangement number alongside it so the enclosure is checkable.

use rug::{Float, Integer};
use serde::{Deserialize, Serialize};

use pav_core::Result;

use crate::scalar::{log10_factorial, BigScalar, LOG_PRECISION};
use crate::uniform::factorial_scalar;

/// Largest `n` for which the derangement number is produced as an exact
/// integer via the recurrence; beyond it the log₁₀ form `n!/e` is used
/// (exact to within one unit in the last of thousands of digits).
pub const EXACT_DERANGEMENT_MAX_N: u64 = 10_000;

/// The fixed-point bound and the derangement-count interval it induces.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FixedPointReport {
    pub n: u64,
    /// `3(1 − e⁻¹)/n`, the total-variation bound against Poisson(1).
    pub tv_bound: BigScalar,
    /// `n! e⁻¹ − 3(n−1)!(1 − e⁻¹)`, clamped at zero.
    pub derangement_lower: BigScalar,
    /// `n! e⁻¹ + 3(n−1)!(1 − e⁻¹)`.
    pub derangement_upper: BigScalar,
    pub derangement_lower_clamped: bool,
    /// The exact derangement number `D_n = n! Σ_{i=0}^n (−1)^i/i!`.
    pub derangements: BigScalar,
}

/// `D_n` via the recurrence `D_i = i·D_{i−1} + (−1)^i`, exactly while the
/// integers stay affordable and as `n!/e` in log₁₀ form beyond that.
pub fn derangement_count(n: u64) -> BigScalar {
    if n <= EXACT_DERANGEMENT_MAX_N {
        let mut d = Integer::from(1);
        for i in 1..=n {
            d *= i;
            if i % 2 == 0 {
                d += 1;
            } else {
                d -= 1;
            }
        }
        BigScalar::from_integer(d)
    } else {
        let log10_e = Float::with_val(LOG_PRECISION, 1).exp().log10();
        BigScalar::from_log10(1, log10_factorial(n) - log10_e)
    }
}

/// The Poisson(1) bound on the fixed-point count of a uniform permutation
/// of length `n ≥ 1`, with the induced derangement-count interval.
pub fn fixed_point_bound(n: u64) -> Result<FixedPointReport> {
    if n == 0 {
        return Err(pav_core::Error::invalid(
            "the fixed-point bound needs a permutation length n >= 1",
        ));
    }
    let exp_neg_one = BigScalar::one().exp_neg();
    let one_minus = BigScalar::one().sub(&exp_neg_one);
    let tv_bound = BigScalar::from_u64(3)
        .mul(&one_minus)
        .div(&BigScalar::from_u64(n))?;

    let center = factorial_scalar(n).mul(&exp_neg_one);
    let half_width = BigScalar::from_u64(3)
        .mul(&factorial_scalar(n - 1))
        .mul(&one_minus);
    let (derangement_lower, derangement_lower_clamped) =
        center.sub(&half_width).clamp_zero();
    let derangement_upper = center.add(&half_width);

    Ok(FixedPointReport {
        n,
        tv_bound,
        derangement_lower,
        derangement_upper,
        derangement_lower_clamped,
        derangements: derangement_count(n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn small_derangement_numbers_are_exact() {
        let expect = [1u64, 0, 1, 2, 9, 44, 265, 1854, 14833];
        for (n, want) in expect.iter().enumerate() {
            assert_eq!(
                derangement_count(n as u64).as_exact(),
                Some(&Rational::from(*want)),
                "D_{n}"
            );
        }
    }

    #[test]
    fn derangement_number_lies_in_the_interval() {
        for n in 4..=12 {
            let r = fixed_point_bound(n).unwrap();
            let d = derangement_count(n);
            assert_ne!(
                r.derangement_lower.cmp_approx(&d),
                std::cmp::Ordering::Greater,
                "lower > D_{n}"
            );
            assert_ne!(
                d.cmp_approx(&r.derangement_upper),
                std::cmp::Ordering::Greater,
                "D_{n} > upper"
            );
        }
    }

    #[test]
    fn tv_bound_decreases_like_one_over_n() {
        let mut previous = f64::INFINITY;
        for n in [1u64, 2, 5, 10, 100, 1000] {
            let tv = fixed_point_bound(n).unwrap().tv_bound.to_f64();
            assert!(tv < previous, "tv not decreasing at n = {n}");
            previous = tv;
        }
        // 3(1−e⁻¹)/10 ≈ 0.18964.
        let tv10 = fixed_point_bound(10).unwrap().tv_bound.to_f64();
        assert!((tv10 - 0.3 * (1.0 - (-1.0f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn tiny_n_clamps_the_lower_endpoint() {
        let r = fixed_point_bound(1).unwrap();
        assert!(r.derangement_lower_clamped);
        assert!(r.derangement_lower.is_zero());
        assert_eq!(r.derangements.as_exact(), Some(&Rational::from(0)));
        assert!(fixed_point_bound(0).is_err());
    }

    #[test]
    fn huge_n_uses_the_log_form_consistently() {
        let d = derangement_count(1_000_000);
        assert!(!d.is_exact());
        // D_n · e / n! → 1.
        let ratio = d
            .div(&factorial_scalar(1_000_000).mul(&BigScalar::one().exp_neg()))
            .unwrap();
        assert!((ratio.to_f64() - 1.0).abs() < 1e-12);
    }
}
