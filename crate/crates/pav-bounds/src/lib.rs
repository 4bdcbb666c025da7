//! Finite Poisson-approximation bounds for pattern occurrences in random
//! permutations.
//!
//! The crate evaluates, in exact rational or high-precision log-space
//! arithmetic, the Chen–Stein-style bounds on how far pattern-occurrence
//! counts sit from their Poisson limits: classical and consecutive
//! occurrences under the uniform measure, consecutive occurrences under the
//! Mallows(q) measure, the specialized closed forms for monotone and
//! length-3 patterns, the fixed-point/derangement bound, and the
//! regime/pattern-length selectors that locate where the approximations
//! bite.
//!
//! Everything funnels through [`BigScalar`], a dual exact-rational /
//! log₁₀-float scalar able to express quantities like `10^{65657059}`
//! without overflow, and every bound operation returns a serializable
//! report carrying each term of the bound separately.

mod diagnostic;
mod enclose;
mod fixed_point;
mod invpoly;
mod length3;
mod mallows;
mod monotone;
mod poisson;
mod regime;
mod scalar;
mod selector;
mod uniform;

pub use diagnostic::{d1_diagnostic, D1Diagnostic};
pub use enclose::{
    exp_neg_enclosure, poisson_pmf_enclosures, Enclosure, ENCLOSURE_PRECISION,
};
pub use fixed_point::{
    derangement_count, fixed_point_bound, FixedPointReport, EXACT_DERANGEMENT_MAX_N,
};
pub use invpoly::{inversion_poly_value, EXACT_FACTORIAL_MAX_N, EXACT_PRODUCT_MAX_N};
pub use length3::length3_mallows_bounds;
pub use mallows::{mallows_consecutive_bounds, B2Term, MallowsBoundsReport};
pub use monotone::{monotone_mallows_bounds, MonotoneDirection};
pub use regime::{mallows_regime, RegimeReport};
pub use selector::{consecutive_pattern_length, PatternLengthSelection};
pub use poisson::{poisson_interval, poisson_pmf, PoissonInterval};
pub use scalar::{
    binomial, factorial, log10_factorial, q_power, BigScalar, QParam, EXACT_POWER_MAX_EXP,
    LOG_PRECISION,
};
pub use uniform::{
    uniform_classical_bounds, uniform_consecutive_bounds, D2Method, UniformBoundsReport,
    MAX_EXACT_PATTERN_LEN,
};
