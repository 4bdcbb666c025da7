//! Regime-exploration diagnostic for the classical neighborhood term.
//!
//! For classical occurrences, `d₁ = C(n,j)(C(n,j) − C(n−j,j))/j!²` behaves
//! like `λ²(1 − e^{−j²/n})` once `n` is large against `j²`: the bracketed
//! difference measures how much of the second window's freedom the first
//! window consumes, and `C(n−j,j)/C(n,j) ≈ e^{−j²/n}`.  The diagnostic
//! returns the exact value and the float surrogate side by side (with
//! their ratio) so regime plots can show where the approximation starts to
//! hold; no equality between the two is asserted anywhere.

use serde::{Deserialize, Serialize};

use pav_core::{Error, Result};

use crate::scalar::BigScalar;
use crate::uniform::{classical_d1, classical_lambda};

/// The exact classical `d₁` and its asymptotic surrogate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct D1Diagnostic {
    pub n: u64,
    pub j: u64,
    /// `C(n,j)/j!` (exact).
    pub lambda: BigScalar,
    /// `C(n,j)(C(n,j) − C(n−j,j))/j!²` (exact).
    pub d1_exact: BigScalar,
    /// `λ²(1 − e^{−j²/n})` in double precision; may overflow to infinity
    /// when `λ` itself exceeds the double range.
    pub d1_asymptotic: f64,
    /// `d1_exact / d1_asymptotic` in double precision, when finite.
    pub ratio: f64,
}

/// Computes the exact `d₁` alongside its asymptotic surrogate
/// `λ²(1 − e^{−j²/n})` for `n ≥ j ≥ 1`.
pub fn d1_diagnostic(n: u64, j: u64) -> Result<D1Diagnostic> {
    if j == 0 || j > n {
        return Err(Error::invalid(format!(
            "d1 diagnostic needs n >= j >= 1, got n = {n}, j = {j}"
        )));
    }
    let lambda = classical_lambda(n, j);
    let d1_exact = classical_d1(n, j);
    let lambda_f = lambda.to_f64();
    let shape = 1.0 - (-((j as f64) * (j as f64) / (n as f64))).exp();
    let d1_asymptotic = lambda_f * lambda_f * shape;
    let ratio = d1_exact.to_f64() / d1_asymptotic;
    Ok(D1Diagnostic {
        n,
        j,
        lambda,
        d1_exact,
        d1_asymptotic,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Rational;

    #[test]
    fn single_element_pattern_is_fully_explicit() {
        // j = 1: λ = n and d₁ = n·(n − (n−1)) = n.
        let d = d1_diagnostic(10, 1).unwrap();
        assert_eq!(d.lambda.as_exact(), Some(&Rational::from(10)));
        assert_eq!(d.d1_exact.as_exact(), Some(&Rational::from(10)));
    }

    #[test]
    fn surrogate_tracks_the_small_ratio_regime() {
        // j²/n = 9·10⁻⁴: the shape factor is ≈ j²/n and the surrogate is
        // within a percent of λ²·j²/n.
        let d = d1_diagnostic(10_000, 3).unwrap();
        let lambda = d.lambda.to_f64();
        let crude = lambda * lambda * 9.0 / 10_000.0;
        assert!((d.d1_asymptotic / crude - 1.0).abs() < 0.01);
    }

    #[test]
    fn table_scale_instance_reports_a_sane_ratio() {
        // Both quantities are minuscule here (λ ≈ 5·10⁻¹⁵) but their ratio
        // is near 1; only finiteness and positivity are asserted.
        let d = d1_diagnostic(100, 36).unwrap();
        assert!(d.d1_exact.to_f64() > 0.0);
        assert!(d.d1_asymptotic > 0.0);
        assert!(d.ratio.is_finite() && d.ratio > 0.0);
        assert!((d.ratio - 1.0).abs() < 0.1);
    }

    #[test]
    fn full_length_window_weights_the_whole_tail() {
        // j = n: C(n−j,j) = 0, so d₁ = λ² exactly, and the surrogate is
        // λ²(1 − e^{−n}).
        let d = d1_diagnostic(5, 5).unwrap();
        assert_eq!(d.d1_exact.as_exact(), Some(&Rational::from((1, 14_400))));
        let lambda = 1.0 / 120.0;
        let expect = lambda * lambda * (1.0 - (-5.0f64).exp());
        assert!((d.d1_asymptotic - expect).abs() < 1e-18);
    }

    #[test]
    fn domain_validation() {
        assert!(d1_diagnostic(5, 0).is_err());
        assert!(d1_diagnostic(5, 6).is_err());
    }
}
