//! The normalizing constant `I_n(q) = Π_{j=1}^n (1 + q + ⋯ + q^{j−1})` of
//! the Mallows measure.

use rug::{Float, Rational};

use pav_core::{Error, Result};

use crate::scalar::{factorial, log10_factorial, BigScalar, QParam, LOG_PRECISION};

/// Largest `n` evaluated as an exact rational product for `q ≠ 1`; beyond
/// this the digit count grows quadratically in `n`, so evaluation degrades
/// to log space.
pub const EXACT_PRODUCT_MAX_N: u64 = 1000;

/// Largest `n` for which `I_n(1) = n!` is returned as an exact integer.
pub const EXACT_FACTORIAL_MAX_N: u64 = 100_000;

/// Evaluate `I_n(q)`.  Exact for rational `q` up to the size guards above,
/// log-space otherwise; `I_n(1) = n!` in all cases.
pub fn inversion_poly_value(n: u64, q: &QParam) -> Result<BigScalar> {
    if n < 1 {
        return Err(Error::invalid("inversion polynomial needs n >= 1"));
    }
    if q.is_one() {
        if n <= EXACT_FACTORIAL_MAX_N {
            return Ok(BigScalar::from_integer(factorial(n)));
        }
        return Ok(BigScalar::from_log10(1, log10_factorial(n)));
    }
    match q {
        QParam::Rational(r) if n <= EXACT_PRODUCT_MAX_N => Ok(exact_product(n, r)),
        QParam::Rational(r) => log_product(n, &Float::with_val(LOG_PRECISION, r)),
        QParam::Float(f) => {
            if !(f.is_finite() && *f > 0.0) {
                return Err(Error::invalid("Mallows parameter q must be positive"));
            }
            log_product(n, &Float::with_val(LOG_PRECISION, *f))
        }
    }
}

/// `I_n(q)` as an exact rational via the row recurrence
/// `row_j = row_{j−1} + q^{j−1}`.
fn exact_product(n: u64, q: &Rational) -> BigScalar {
    let mut acc = Rational::from(1);
    let mut row = Rational::from(1);
    let mut pow = Rational::from(1);
    for _ in 2..=n {
        pow *= q;
        row += &pow;
        acc *= &row;
    }
    BigScalar::from_rational(acc)
}

/// `I_n(q)` in log space.  Uses `row_j = (1 − q^j)/(1 − q)` and, for `q > 1`,
/// the reversal identity `I_n(q) = q^{n(n−1)/2} I_n(1/q)` to reduce to
/// `q < 1`, where `Σ_j log(1 − q^j)` truncates once `q^j` underflows the
/// working precision.
fn log_product(n: u64, q: &Float) -> Result<BigScalar> {
    if q > &1u32 {
        let inv_q = Float::with_val(LOG_PRECISION, 1u32) / q;
        let reduced = log_product(n, &inv_q)?;
        let tri = Float::with_val(LOG_PRECISION, n) * Float::with_val(LOG_PRECISION, n - 1) / 2u32;
        let shift = tri * q.clone().log10();
        let (sign, log10) = reduced.to_log_parts();
        debug_assert_eq!(sign, 1);
        return Ok(BigScalar::from_log10(1, log10 + shift));
    }
    // q < 1 here.  Terms with q^j below 10^{-240} shift log10 I_n by less
    // than the working precision resolves, so the sum may stop there.
    let log10_q = q.clone().log10(); // negative
    let cutoff = (Float::with_val(LOG_PRECISION, -240) / &log10_q).to_f64();
    let significant = if cutoff.is_finite() {
        (cutoff.ceil() as u64).min(n)
    } else {
        n
    };
    if significant > 1_000_000 {
        return Err(Error::resource(format!(
            "log-space inversion polynomial with q = {q} needs {significant} product terms; \
             q is too close to 1 for this n"
        )));
    }
    let mut log10_sum = Float::with_val(LOG_PRECISION, 0);
    let mut pow = Float::with_val(LOG_PRECISION, 1);
    for _ in 1..=significant {
        pow *= q;
        let row = Float::with_val(LOG_PRECISION, 1u32) - &pow;
        log10_sum += row.log10();
    }
    // Σ_{j=1}^n log10 (1−q^j)/(1−q) = Σ log10(1−q^j) − n·log10(1−q).
    let one_minus_q = Float::with_val(LOG_PRECISION, 1u32) - q;
    let log10_in = log10_sum - Float::with_val(LOG_PRECISION, n) * one_minus_q.log10();
    Ok(BigScalar::from_log10(1, log10_in))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_rat(num: i64, den: i64) -> QParam {
        QParam::from_ratio(num, den).unwrap()
    }

    #[test]
    fn base_cases() {
        assert_eq!(
            inversion_poly_value(1, &q_rat(7, 3)).unwrap().as_exact(),
            Some(&Rational::from(1))
        );
        assert_eq!(
            inversion_poly_value(5, &QParam::one()).unwrap().as_exact(),
            Some(&Rational::from(120))
        );
        assert!(inversion_poly_value(0, &QParam::one()).is_err());
    }

    #[test]
    fn i3_matches_its_closed_form() {
        // I₃(q) = 1 + 2q + 2q² + q³ at sample points.
        for (num, den) in [(1i64, 2i64), (1, 3), (2, 1), (5, 7)] {
            let q = Rational::from((num, den));
            let expect = Rational::from(1)
                + Rational::from(2) * q.clone()
                + Rational::from(2) * q.clone() * q.clone()
                + q.clone() * q.clone() * q.clone();
            let got = inversion_poly_value(3, &q_rat(num, den)).unwrap();
            assert_eq!(got.as_exact(), Some(&expect));
        }
    }

    #[test]
    fn reversal_symmetry_at_reciprocal_points() {
        // I_n(q) = q^{n(n−1)/2} I_n(1/q), exactly in rational arithmetic.
        let q = q_rat(3, 2);
        let qinv = q_rat(2, 3);
        let n = 6u64;
        let left = inversion_poly_value(n, &q).unwrap();
        let shift = qinv.pow((n * (n - 1) / 2) as u32);
        let right = inversion_poly_value(n, &qinv).unwrap();
        assert_eq!(left.mul(&shift).as_exact(), right.as_exact());
    }

    #[test]
    fn log_path_agrees_with_exact_path() {
        // Force the log path via a float parameter and compare digits.
        let exact = inversion_poly_value(50, &q_rat(1, 2)).unwrap();
        let logged = inversion_poly_value(50, &QParam::from_f64(0.5).unwrap()).unwrap();
        let (_, le) = exact.to_log_parts();
        let (_, ll) = logged.to_log_parts();
        assert!((le.to_f64() - ll.to_f64()).abs() < 1e-12);

        let exact_big = inversion_poly_value(200, &q_rat(2, 1)).unwrap();
        let logged_big = inversion_poly_value(200, &QParam::from_f64(2.0).unwrap()).unwrap();
        let (_, le) = exact_big.to_log_parts();
        let (_, ll) = logged_big.to_log_parts();
        assert!((le.to_f64() - ll.to_f64()).abs() / le.to_f64().abs() < 1e-12);
    }

    #[test]
    fn huge_n_uniform_uses_log_factorial() {
        let v = inversion_poly_value(1_000_000, &QParam::one()).unwrap();
        assert!(!v.is_exact());
        assert_eq!(v.sci6(), "8.26393e5565708");
    }

    #[test]
    fn near_one_float_parameter_is_guarded() {
        let err = inversion_poly_value(10_000_000, &QParam::from_f64(1.0 - 1e-12).unwrap());
        assert!(matches!(err, Err(Error::ResourceLimit(_))));
    }
}
