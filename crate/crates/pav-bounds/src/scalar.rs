//! Arbitrary-magnitude scalars: exact rationals with a log-space fallback.
//!
//! Bound formulas mix quantities of wildly different magnitudes — factorials
//! like 10⁶! next to probabilities like e^{−λ} — so a scalar is either an
//! exact big rational (lossless arithmetic) or a sign plus a base-10
//! logarithm held as a 768-bit float.  Conversion is one-way: exact values
//! may degrade to log form, never the reverse.  Log-mode arithmetic keeps
//! far more than the twelve significant decimal digits the reports promise.

use std::cmp::Ordering;
use std::fmt;

use rug::ops::Pow;
use rug::{Complete, Float, Integer, Rational};
use serde::de;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use pav_core::{Error, Result};

/// Working precision (bits) of log-mode magnitudes: ~231 decimal digits,
/// enough that |log₁₀| up to ~10²¹⁸ still leaves 12 digits of mantissa.
pub const LOG_PRECISION: u32 = 768;

/// An exact-or-log-space scalar.  See the module docs.
#[derive(Debug, Clone)]
pub enum BigScalar {
    /// Lossless big-rational value.
    Exact(Rational),
    /// `sign · 10^log10` with `sign ∈ {−1, 0, +1}`; when `sign == 0` the
    /// magnitude is ignored.
    Log { sign: i8, log10: Float },
}

impl BigScalar {
    pub fn zero() -> BigScalar {
        BigScalar::Exact(Rational::new())
    }

    pub fn one() -> BigScalar {
        BigScalar::from_u64(1)
    }

    pub fn from_u64(v: u64) -> BigScalar {
        BigScalar::Exact(Rational::from(v))
    }

    pub fn from_rational(v: Rational) -> BigScalar {
        BigScalar::Exact(v)
    }

    pub fn from_integer(v: Integer) -> BigScalar {
        BigScalar::Exact(Rational::from(v))
    }

    /// Ratio constructor; `den` must be nonzero.
    pub fn from_ratio(num: Integer, den: Integer) -> Result<BigScalar> {
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(BigScalar::Exact(Rational::from((num, den))))
    }

    /// A finite float enters directly in log mode (floats carry no exactness
    /// worth preserving).
    pub fn from_f64(v: f64) -> Result<BigScalar> {
        if !v.is_finite() {
            return Err(Error::invalid("non-finite float"));
        }
        if v == 0.0 {
            return Ok(BigScalar::zero());
        }
        let sign = if v > 0.0 { 1 } else { -1 };
        let log10 = Float::with_val(LOG_PRECISION, v.abs()).log10();
        Ok(BigScalar::Log { sign, log10 })
    }

    /// Build a log-mode value directly from its base-10 logarithm.
    pub fn from_log10(sign: i8, log10: Float) -> BigScalar {
        if sign == 0 {
            BigScalar::zero()
        } else {
            let log10 = if log10.prec() == LOG_PRECISION {
                log10
            } else {
                Float::with_val(LOG_PRECISION, &log10)
            };
            BigScalar::Log {
                sign: sign.signum(),
                log10,
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BigScalar::Exact(_))
    }

    /// −1, 0, or +1.
    pub fn signum(&self) -> i8 {
        match self {
            BigScalar::Exact(r) => match r.cmp0() {
                Ordering::Less => -1,
                Ordering::Equal => 0,
                Ordering::Greater => 1,
            },
            BigScalar::Log { sign, .. } => *sign,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.signum() == 0
    }

    /// The exact rational, if this scalar is still in exact mode.
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            BigScalar::Exact(r) => Some(r),
            BigScalar::Log { .. } => None,
        }
    }

    /// `(sign, log₁₀|x|)`; the magnitude is meaningless when `sign == 0`.
    pub fn to_log_parts(&self) -> (i8, Float) {
        match self {
            BigScalar::Exact(r) => {
                let sign = self.signum();
                if sign == 0 {
                    return (0, Float::with_val(LOG_PRECISION, 0));
                }
                (sign, rational_abs_log10(r))
            }
            BigScalar::Log { sign, log10 } => (*sign, log10.clone()),
        }
    }

    /// Forget exactness, keeping `(sign, log₁₀)` only.
    pub fn to_log_mode(&self) -> BigScalar {
        let (sign, log10) = self.to_log_parts();
        BigScalar::from_log10(sign, log10)
    }

    pub fn neg(&self) -> BigScalar {
        match self {
            BigScalar::Exact(r) => BigScalar::Exact(-r.clone()),
            BigScalar::Log { sign, log10 } => BigScalar::Log {
                sign: -sign,
                log10: log10.clone(),
            },
        }
    }

    pub fn abs(&self) -> BigScalar {
        match self {
            BigScalar::Exact(r) => BigScalar::Exact(r.clone().abs()),
            BigScalar::Log { sign, log10 } => BigScalar::Log {
                sign: sign.abs(),
                log10: log10.clone(),
            },
        }
    }

    pub fn add(&self, other: &BigScalar) -> BigScalar {
        match (self, other) {
            (BigScalar::Exact(a), BigScalar::Exact(b)) => {
                BigScalar::Exact((a + b).complete())
            }
            _ => log_add(self.to_log_parts(), other.to_log_parts()),
        }
    }

    pub fn sub(&self, other: &BigScalar) -> BigScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BigScalar) -> BigScalar {
        match (self, other) {
            (BigScalar::Exact(a), BigScalar::Exact(b)) => {
                BigScalar::Exact((a * b).complete())
            }
            _ => {
                let (sa, la) = self.to_log_parts();
                let (sb, lb) = other.to_log_parts();
                if sa == 0 || sb == 0 {
                    return BigScalar::zero();
                }
                BigScalar::from_log10(sa * sb, la + lb)
            }
        }
    }

    /// Division; errors on a zero divisor.
    pub fn div(&self, other: &BigScalar) -> Result<BigScalar> {
        if other.is_zero() {
            return Err(Error::invalid("division by zero"));
        }
        match (self, other) {
            (BigScalar::Exact(a), BigScalar::Exact(b)) => {
                Ok(BigScalar::Exact((a / b).complete()))
            }
            _ => {
                let (sa, la) = self.to_log_parts();
                let (sb, lb) = other.to_log_parts();
                if sa == 0 {
                    return Ok(BigScalar::zero());
                }
                Ok(BigScalar::from_log10(sa * sb, la - lb))
            }
        }
    }

    /// Integer power (lossless in exact mode).
    pub fn pow_u32(&self, e: u32) -> BigScalar {
        if e == 0 {
            return BigScalar::one();
        }
        match self {
            BigScalar::Exact(r) => BigScalar::Exact(r.clone().pow(e)),
            BigScalar::Log { sign, log10 } => {
                let sign = if e % 2 == 0 { sign.abs() } else { *sign };
                BigScalar::from_log10(sign, log10.clone() * e)
            }
        }
    }

    /// `e^self`, always in log mode (the result is transcendental).
    pub fn exp(&self) -> BigScalar {
        let (sign, log10) = self.to_log_parts();
        if sign == 0 {
            return BigScalar::one();
        }
        // log10(e^x) = x·log10(e); reconstruct x from sign and magnitude.
        let mut x = log10.exp10();
        if sign < 0 {
            x = -x;
        }
        let log10e = Float::with_val(LOG_PRECISION, 1u32).exp().log10();
        BigScalar::from_log10(1, x * log10e)
    }

    /// `e^{−self}` evaluated stably from the exact value where possible.
    pub fn exp_neg(&self) -> BigScalar {
        match self {
            BigScalar::Exact(r) => {
                let x = Float::with_val(LOG_PRECISION, r);
                let log10e = Float::with_val(LOG_PRECISION, 1u32).exp().log10();
                BigScalar::from_log10(1, -x * log10e)
            }
            BigScalar::Log { .. } => self.neg().exp(),
        }
    }

    /// Natural logarithm; errors on non-positive values.
    pub fn ln(&self) -> Result<BigScalar> {
        let (sign, log10) = self.to_log_parts();
        if sign <= 0 {
            return Err(Error::invalid("logarithm of a non-positive value"));
        }
        let ln10 = Float::with_val(LOG_PRECISION, 10u32).ln();
        let ln_x = log10 * ln10;
        let s = match ln_x.cmp0() {
            Some(Ordering::Less) => -1,
            Some(Ordering::Equal) | None => 0,
            Some(Ordering::Greater) => 1,
        };
        if s == 0 {
            return Ok(BigScalar::zero());
        }
        Ok(BigScalar::from_log10(s, ln_x.abs().log10()))
    }

    /// `min(1, 1/self)` for positive scalars — the scaling factor in front of
    /// `d₁ + d₂`.
    pub fn min_one_recip(&self) -> Result<BigScalar> {
        if self.signum() <= 0 {
            return Err(Error::invalid("min(1, 1/x) needs x > 0"));
        }
        if self.cmp_approx(&BigScalar::one()) == Ordering::Greater {
            BigScalar::one().div(self)
        } else {
            Ok(BigScalar::one())
        }
    }

    /// Ordering; exact between exact values, otherwise via 768-bit logs
    /// (operationally reliable — near-ties at ~230 digits compare equal).
    pub fn cmp_approx(&self, other: &BigScalar) -> Ordering {
        match (self, other) {
            (BigScalar::Exact(a), BigScalar::Exact(b)) => a.cmp(b),
            _ => {
                let (sa, la) = self.to_log_parts();
                let (sb, lb) = other.to_log_parts();
                match sa.cmp(&sb) {
                    Ordering::Equal => {}
                    o => return o,
                }
                if sa == 0 {
                    return Ordering::Equal;
                }
                let mag = la.partial_cmp(&lb).unwrap_or(Ordering::Equal);
                if sa > 0 {
                    mag
                } else {
                    mag.reverse()
                }
            }
        }
    }

    /// Clamp negatives to zero, reporting whether clamping happened.
    pub fn clamp_zero(&self) -> (BigScalar, bool) {
        if self.signum() < 0 {
            (BigScalar::zero(), true)
        } else {
            (self.clone(), false)
        }
    }

    /// Clamp into `[0, 1]`, reporting whether clamping happened.
    pub fn clamp_unit(&self) -> (BigScalar, bool) {
        if self.signum() < 0 {
            return (BigScalar::zero(), true);
        }
        if self.cmp_approx(&BigScalar::one()) == Ordering::Greater {
            return (BigScalar::one(), true);
        }
        (self.clone(), false)
    }

    /// Lossy `f64` view for diagnostics; may overflow to ±∞ or underflow.
    pub fn to_f64(&self) -> f64 {
        match self {
            BigScalar::Exact(r) => r.to_f64(),
            BigScalar::Log { sign, log10 } => {
                let mag = log10.to_f64();
                *sign as f64 * 10f64.powf(mag)
            }
        }
    }

    /// Six-significant-digit scientific notation, e.g. `6.85456e157`.
    pub fn sci6(&self) -> String {
        self.sci(6)
    }

    /// Scientific notation with `digits` significant digits.
    pub fn sci(&self, digits: u32) -> String {
        let (sign, log10) = self.to_log_parts();
        if sign == 0 {
            return "0".to_string();
        }
        let prefix = if sign < 0 { "-" } else { "" };
        let (mantissa, exponent) = mantissa_exponent(&log10, digits);
        format!("{prefix}{mantissa}e{exponent}")
    }

    /// Exact-rational text (`num/den`, or just `num` when integral), when
    /// still exact.
    pub fn exact_string(&self) -> Option<String> {
        self.as_exact().map(|r| r.to_string())
    }

    /// `log₁₀|x|` rendered with 60 digits (ample to regenerate the display
    /// form even for table-scale exponents); `None` for zero.
    pub fn log10_string(&self) -> Option<String> {
        let (sign, log10) = self.to_log_parts();
        if sign == 0 {
            return None;
        }
        Some(format!("{:.60e}", log10))
    }
}

/// `log₁₀|r|` of a nonzero rational at full working precision.
fn rational_abs_log10(r: &Rational) -> Float {
    let num = Float::with_val(LOG_PRECISION, r.numer()).abs().log10();
    let den = Float::with_val(LOG_PRECISION, r.denom()).log10();
    num - den
}

/// Signed addition in log space.
fn log_add(a: (i8, Float), b: (i8, Float)) -> BigScalar {
    let (sa, la) = a;
    let (sb, lb) = b;
    if sa == 0 {
        return BigScalar::from_log10(sb, lb);
    }
    if sb == 0 {
        return BigScalar::from_log10(sa, la);
    }
    // Order so that |x| ≥ |y|.
    let (sx, lx, sy, ly) = if la >= lb {
        (sa, la, sb, lb)
    } else {
        (sb, lb, sa, la)
    };
    let delta = Float::with_val(LOG_PRECISION, &ly - &lx); // ≤ 0
    let ratio = delta.exp10(); // 10^{ly−lx} ∈ (0, 1]
    if sx == sy {
        let bump = (ratio + 1u32).log10();
        BigScalar::from_log10(sx, lx + bump)
    } else {
        let rest = Float::with_val(LOG_PRECISION, 1u32) - ratio;
        if rest.is_zero() {
            return BigScalar::zero();
        }
        let drop = rest.log10();
        BigScalar::from_log10(sx, lx + drop)
    }
}

/// Split `log₁₀ x` into a rounded mantissa string in `[1, 10)` and an integer
/// exponent, with carry when the mantissa rounds up to 10.
fn mantissa_exponent(log10: &Float, digits: u32) -> (String, Integer) {
    let mut exponent = log10
        .clone()
        .floor()
        .to_integer()
        .expect("finite logarithm");
    let frac = log10.clone() - Float::with_val(LOG_PRECISION, &exponent);
    let mantissa = frac.exp10().to_f64();
    let scale = 10f64.powi(digits as i32 - 1);
    let mut scaled = (mantissa * scale).round();
    if scaled >= 10.0 * scale {
        scaled = scale; // 9.99999… rounded up to 10 → 1.0 with exponent + 1
        exponent += 1;
    }
    let digits_str = format!("{:0width$}", scaled as u64, width = digits as usize);
    let (head, tail) = digits_str.split_at(1);
    let mantissa_str = if tail.is_empty() {
        head.to_string()
    } else {
        format!("{head}.{tail}")
    };
    (mantissa_str, exponent)
}

impl fmt::Display for BigScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sci6())
    }
}

impl PartialEq for BigScalar {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_approx(other) == Ordering::Equal
    }
}

impl Serialize for BigScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("BigScalar", 4)?;
        match self {
            BigScalar::Exact(r) => {
                s.serialize_field("kind", "exact")?;
                s.serialize_field("exact", &r.to_string())?;
                s.serialize_field("log10", &self.log10_string())?;
            }
            BigScalar::Log { sign, .. } => {
                s.serialize_field("kind", "log")?;
                s.serialize_field("exact", &Option::<String>::None)?;
                s.serialize_field(
                    "log10",
                    &self.log10_string().map(|l| {
                        if *sign < 0 {
                            format!("-|{l}|")
                        } else {
                            l
                        }
                    }),
                )?;
            }
        }
        s.serialize_field("display", &self.sci6())?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for BigScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: String,
            exact: Option<String>,
            log10: Option<String>,
            display: String,
        }
        let raw = Raw::deserialize(deserializer)?;
        match raw.kind.as_str() {
            "exact" => {
                let text = raw
                    .exact
                    .ok_or_else(|| de::Error::custom("exact scalar without value"))?;
                let r: Rational = text
                    .parse()
                    .map_err(|e| de::Error::custom(format!("bad rational: {e}")))?;
                Ok(BigScalar::Exact(r))
            }
            "log" => {
                let negative = raw
                    .log10
                    .as_deref()
                    .map(|l| l.starts_with("-|"))
                    .unwrap_or(false)
                    || raw.display.starts_with('-');
                let log_text = raw
                    .log10
                    .ok_or_else(|| de::Error::custom("log scalar without magnitude"))?;
                let trimmed = log_text
                    .trim_start_matches("-|")
                    .trim_end_matches('|');
                let parsed = Float::parse(trimmed)
                    .map_err(|e| de::Error::custom(format!("bad log10: {e}")))?;
                let log10 = Float::with_val(LOG_PRECISION, parsed);
                Ok(BigScalar::from_log10(if negative { -1 } else { 1 }, log10))
            }
            other => Err(de::Error::custom(format!("unknown scalar kind {other}"))),
        }
    }
}

/// The Mallows parameter: an exact positive rational or a plain float.
/// Rational parameters keep the whole bound computation exact.
#[derive(Debug, Clone, PartialEq)]
pub enum QParam {
    Rational(Rational),
    Float(f64),
}

impl QParam {
    pub fn one() -> QParam {
        QParam::Rational(Rational::from(1))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<QParam> {
        if den == 0 {
            return Err(Error::invalid("zero denominator in q"));
        }
        let q = Rational::from((num, den));
        QParam::Rational(q).validated()
    }

    pub fn from_f64(v: f64) -> Result<QParam> {
        QParam::Float(v).validated()
    }

    /// Require q > 0 (and finite).
    pub fn validated(self) -> Result<QParam> {
        let ok = match &self {
            QParam::Rational(r) => r.cmp0() == Ordering::Greater,
            QParam::Float(f) => f.is_finite() && *f > 0.0,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::invalid("Mallows parameter q must be positive"))
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            QParam::Rational(r) => *r == 1u32,
            QParam::Float(f) => *f == 1.0,
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            QParam::Rational(r) => Some(r),
            QParam::Float(_) => None,
        }
    }

    /// `1/q`, staying exact for rational parameters.
    pub fn recip(&self) -> QParam {
        match self {
            QParam::Rational(r) => QParam::Rational(r.clone().recip()),
            QParam::Float(f) => QParam::Float(1.0 / f),
        }
    }

    /// `q` as a scalar (exact for rational parameters).
    pub fn to_scalar(&self) -> BigScalar {
        match self {
            QParam::Rational(r) => BigScalar::Exact(r.clone()),
            QParam::Float(f) => BigScalar::from_f64(*f).expect("validated parameter"),
        }
    }

    /// `q^e` as a scalar.
    pub fn pow(&self, e: u32) -> BigScalar {
        self.to_scalar().pow_u32(e)
    }
}

/// Largest exponent for which `q^k` is expanded as an exact rational;
/// beyond this the power is carried in log₁₀ form.
pub const EXACT_POWER_MAX_EXP: u128 = 1_000_000;

/// `q^k` for exponents that may exceed what exact rational expansion can
/// reasonably hold; large exponents switch to log₁₀ form.
pub fn q_power(q: &QParam, k: u128) -> BigScalar {
    if k <= EXACT_POWER_MAX_EXP {
        q.pow(k as u32)
    } else {
        let (sign, log10) = q.to_scalar().to_log_parts();
        let factor = Float::with_val(LOG_PRECISION, Integer::from(k));
        BigScalar::from_log10(sign, log10 * factor)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QParam::Rational(r) => write!(f, "{r}"),
            QParam::Float(v) => write!(f, "{v}"),
        }
    }
}

impl std::str::FromStr for QParam {
    type Err = Error;

    /// Accepts `3`, `1/2`, or `0.25`.
    fn from_str(text: &str) -> Result<QParam> {
        let text = text.trim();
        if let Some((num, den)) = text.split_once('/') {
            let n: i64 = num
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad q numerator in {text:?}")))?;
            let d: i64 = den
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("bad q denominator in {text:?}")))?;
            return QParam::from_ratio(n, d);
        }
        if let Ok(i) = text.parse::<i64>() {
            return QParam::from_ratio(i, 1);
        }
        let f: f64 = text
            .parse()
            .map_err(|_| Error::invalid(format!("bad q value {text:?}")))?;
        QParam::from_f64(f)
    }
}

impl Serialize for QParam {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QParam {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}

/// `n!` as an exact integer.
pub fn factorial(n: u64) -> Integer {
    Integer::from(Integer::factorial(
        u32::try_from(n).expect("factorial argument fits u32"),
    ))
}

/// `C(n, k)` as an exact integer (0 when `k > n`).
pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::new();
    }
    Integer::from(Integer::binomial_u(
        u32::try_from(n).expect("binomial argument fits u32"),
        u32::try_from(k).expect("binomial argument fits u32"),
    ))
}

/// `log₁₀ n!` at full working precision, via `ln Γ(n+1)`.
pub fn log10_factorial(n: u64) -> Float {
    let ln_gamma = Float::with_val(LOG_PRECISION, n + 1).ln_gamma();
    let ln10 = Float::with_val(LOG_PRECISION, 10u32).ln();
    ln_gamma / ln10
}
