//! Inversion generating polynomials of overlap tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::table::OverlapTable;

/// The inversion generating polynomial `Σ_ρ q^{|inv(ρ)|}` of an overlap
/// table, stored sparsely as `inversion count ↦ multiplicity`.
///
/// Evaluation at `q = 1` recovers the witness count; the coefficient at the
/// minimal exponent is the number of witnesses attaining the minimal
/// inversion count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InversionPolynomial {
    coefficients: BTreeMap<u64, u64>,
}

impl InversionPolynomial {
    /// The polynomial of an overlap table: `c_k` counts the witnesses with
    /// exactly `k` inversions.
    pub fn from_table(table: &OverlapTable) -> InversionPolynomial {
        let mut coefficients = BTreeMap::new();
        for w in table.witnesses() {
            *coefficients.entry(w.inversions).or_insert(0) += 1;
        }
        InversionPolynomial { coefficients }
    }

    /// The zero polynomial (empty overlap set).
    pub fn zero() -> InversionPolynomial {
        InversionPolynomial {
            coefficients: BTreeMap::new(),
        }
    }

    /// A polynomial from explicit coefficients `k ↦ c_k`, for cases where
    /// the witness set is known in closed form and enumeration is
    /// unnecessary (for instance a monotone window, whose single witness has
    /// a known inversion count). Zero coefficients are dropped.
    pub fn from_coefficients<I>(coefficients: I) -> InversionPolynomial
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        InversionPolynomial {
            coefficients: coefficients.into_iter().filter(|&(_, c)| c != 0).collect(),
        }
    }

    /// Sparse coefficients `k ↦ c_k`, ascending in `k`, zeros omitted.
    pub fn coefficients(&self) -> &BTreeMap<u64, u64> {
        &self.coefficients
    }

    /// `c_k`.
    pub fn coefficient(&self, k: u64) -> u64 {
        self.coefficients.get(&k).copied().unwrap_or(0)
    }

    /// `Σ_k c_k`, the witness count (the value at `q = 1`).
    pub fn total(&self) -> u64 {
        self.coefficients.values().sum()
    }

    /// The smallest exponent with a nonzero coefficient.
    pub fn min_exponent(&self) -> Option<u64> {
        self.coefficients.keys().next().copied()
    }

    /// `true` when there are no witnesses.
    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }
}

impl fmt::Display for InversionPolynomial {
    /// Render as `q^9 + q^10 + 2 q^11 + …`, or `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, &c) in &self.coefficients {
            if !first {
                write!(f, " + ")?;
            }
            match (c, k) {
                (1, 0) => write!(f, "1")?,
                (1, 1) => write!(f, "q")?,
                (1, _) => write!(f, "q^{k}")?,
                (_, 0) => write!(f, "{c}")?,
                (_, 1) => write!(f, "{c} q")?,
                (_, _) => write!(f, "{c} q^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Convenience: the polynomial of a table.
pub fn inversion_polynomial(table: &OverlapTable) -> InversionPolynomial {
    InversionPolynomial::from_table(table)
}
