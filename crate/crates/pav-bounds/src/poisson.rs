//! Poisson reference quantities: point masses and total-variation intervals
//! around `e^{−λ}`.

use serde::{Deserialize, Serialize};

use pav_core::{Error, Result};

use crate::scalar::{factorial, BigScalar};

/// Beyond this order the pmf is assembled from logarithms instead of an
/// exact power of a rational mean.
const EXACT_POW_MAX_K: u64 = 64;

/// `P(Y = k) = λ^k e^{−λ} / k!` for `Y ~ Poisson(λ)`.
pub fn poisson_pmf(lambda: &BigScalar, k: u64) -> Result<BigScalar> {
    if lambda.signum() < 0 {
        return Err(Error::invalid("Poisson mean must be nonnegative"));
    }
    if lambda.is_zero() {
        return Ok(if k == 0 {
            BigScalar::one()
        } else {
            BigScalar::zero()
        });
    }
    if k > u32::MAX as u64 {
        return Err(Error::resource(format!("Poisson order k = {k} is too large")));
    }
    let power = if lambda.is_exact() && k <= EXACT_POW_MAX_K {
        lambda.pow_u32(k as u32)
    } else {
        let (sign, log10) = lambda.to_log_parts();
        debug_assert_eq!(sign, 1);
        BigScalar::from_log10(1, log10 * k)
    };
    let kfact = BigScalar::from_integer(factorial(k));
    power.mul(&lambda.exp_neg()).div(&kfact)
}

/// `P(W = 0)` sandwiched as `e^{−λ} ∓ bound`, clamped to `[0, 1]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PoissonInterval {
    pub point: BigScalar,
    pub lower: BigScalar,
    pub upper: BigScalar,
    pub lower_clamped: bool,
    pub upper_clamped: bool,
}

/// Interval `[e^{−λ} − bound, e^{−λ} + bound] ∩ [0, 1]` for a nonnegative
/// error bound.
pub fn poisson_interval(lambda: &BigScalar, bound: &BigScalar) -> Result<PoissonInterval> {
    if lambda.signum() < 0 {
        return Err(Error::invalid("Poisson mean must be nonnegative"));
    }
    if bound.signum() < 0 {
        return Err(Error::invalid("interval half-width must be nonnegative"));
    }
    let point = lambda.exp_neg();
    let (lower, lower_clamped) = point.sub(bound).clamp_unit();
    let (upper, upper_clamped) = point.add(bound).clamp_unit();
    Ok(PoissonInterval {
        point,
        lower,
        upper,
        lower_clamped,
        upper_clamped,
    })
}
