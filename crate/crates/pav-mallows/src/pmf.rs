//! The Mallows probability mass function.

use pav_bounds::{inversion_poly_value, q_power, BigScalar, QParam};
use pav_core::{Permutation, Result};

/// `P(σ) = q^{inv(σ)} / I_n(q)` under Mallows(`q`) on `S_n`.
///
/// Exact rational whenever `q` is rational and `n` is within the exact
/// range of the normalizing product; log-scale otherwise.  The reversal
/// duality `P(σ; q) = P(σʳ; 1/q)` holds exactly in the rational regime.
pub fn mallows_pmf(p: &Permutation, q: &QParam) -> Result<BigScalar> {
    let n = p.len() as u64;
    let inv = p.inversion_count();
    let numer = q_power(q, inv as u128);
    let denom = inversion_poly_value(n, q)?;
    numer.div(&denom)
}
