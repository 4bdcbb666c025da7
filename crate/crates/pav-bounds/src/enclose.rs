//! Directed-rounding enclosures for certification arithmetic.
//!
//! Certified comparisons ("exact TV distance ≤ bound") mix exact rationals
//! with transcendental quantities like e^{−λ}.  An [`Enclosure`] brackets a
//! real number between 256-bit floats rounded outward, so any comparison that
//! succeeds against the pessimistic endpoint is a genuine proof, not a
//! floating-point accident.

use rug::float::Round;
use rug::ops::{AddAssignRound, DivAssignRound, MulAssignRound, SubAssignRound};
use rug::{Float, Rational};

/// Working precision (bits) of enclosure endpoints.
pub const ENCLOSURE_PRECISION: u32 = 256;

/// A closed interval `[lo, hi]` guaranteed to contain the represented value.
#[derive(Debug, Clone)]
pub struct Enclosure {
    lo: Float,
    hi: Float,
}

fn f(v: u64) -> Float {
    Float::with_val(ENCLOSURE_PRECISION, v)
}

impl Enclosure {
    pub fn zero() -> Enclosure {
        Enclosure { lo: f(0), hi: f(0) }
    }

    /// Exact rationals enclose with one rounding on each side.
    pub fn from_rational(r: &Rational) -> Enclosure {
        let (lo, _) = Float::with_val_round(ENCLOSURE_PRECISION, r, Round::Down);
        let (hi, _) = Float::with_val_round(ENCLOSURE_PRECISION, r, Round::Up);
        Enclosure { lo, hi }
    }

    pub fn from_u64(v: u64) -> Enclosure {
        Enclosure { lo: f(v), hi: f(v) }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    /// Interval width, rounded up.
    pub fn width(&self) -> Float {
        let mut w = self.hi.clone();
        w.sub_assign_round(&self.lo, Round::Up);
        w
    }

    pub fn add(&self, other: &Enclosure) -> Enclosure {
        let mut lo = self.lo.clone();
        lo.add_assign_round(&other.lo, Round::Down);
        let mut hi = self.hi.clone();
        hi.add_assign_round(&other.hi, Round::Up);
        Enclosure { lo, hi }
    }

    pub fn neg(&self) -> Enclosure {
        Enclosure {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn sub(&self, other: &Enclosure) -> Enclosure {
        self.add(&other.neg())
    }

    /// Full interval product (sign-aware: takes the min/max over the four
    /// endpoint products).
    pub fn mul(&self, other: &Enclosure) -> Enclosure {
        let candidates = [
            (&self.lo, &other.lo),
            (&self.lo, &other.hi),
            (&self.hi, &other.lo),
            (&self.hi, &other.hi),
        ];
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for (a, b) in candidates {
            let mut down = a.clone();
            down.mul_assign_round(b, Round::Down);
            let mut up = a.clone();
            up.mul_assign_round(b, Round::Up);
            lo = Some(match lo {
                Some(cur) => cur.min(&down),
                None => down,
            });
            hi = Some(match hi {
                Some(cur) => cur.max(&up),
                None => up,
            });
        }
        Enclosure {
            lo: lo.unwrap(),
            hi: hi.unwrap(),
        }
    }

    /// Division by a strictly positive interval.
    pub fn div_positive(&self, other: &Enclosure) -> Enclosure {
        assert!(
            other.lo.is_sign_positive() && !other.lo.is_zero(),
            "div_positive requires a positive divisor"
        );
        let mut lo = self.lo.clone();
        lo.div_assign_round(&other.hi, Round::Down);
        let mut hi = self.hi.clone();
        hi.div_assign_round(&other.lo, Round::Up);
        // For a negative numerator the roles of the divisor endpoints swap;
        // recompute pessimistically in that case.
        if self.lo.is_sign_negative() {
            let mut lo2 = self.lo.clone();
            lo2.div_assign_round(&other.lo, Round::Down);
            if lo2 < lo {
                lo = lo2;
            }
        }
        if self.hi.is_sign_negative() {
            let mut hi2 = self.hi.clone();
            hi2.div_assign_round(&other.hi, Round::Up);
            if hi2 > hi {
                hi = hi2;
            }
        }
        Enclosure { lo, hi }
    }

    /// `e^x` (monotone, so endpoints map directly).
    pub fn exp(&self) -> Enclosure {
        let mut lo = self.lo.clone();
        lo.exp_round(Round::Down);
        let mut hi = self.hi.clone();
        hi.exp_round(Round::Up);
        Enclosure { lo, hi }
    }

    /// `|x|` of an interval that may straddle zero.
    pub fn abs(&self) -> Enclosure {
        if self.lo.is_sign_negative() && self.hi.is_sign_positive() {
            let mag = (-self.lo.clone()).max(&self.hi);
            Enclosure { lo: f(0), hi: mag }
        } else if self.hi.is_sign_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// `true` when every point of the interval is ≤ every point of `other` —
    /// the certified comparison.
    pub fn certainly_le(&self, other: &Enclosure) -> bool {
        self.hi <= other.lo
    }

    /// `true` when the whole interval is ≥ 0.
    pub fn certainly_nonnegative(&self) -> bool {
        !self.lo.is_sign_negative() || self.lo.is_zero()
    }

    /// `true` when the whole interval is < 0.
    pub fn certainly_negative(&self) -> bool {
        self.hi.is_sign_negative() && !self.hi.is_zero()
    }

    /// Midpoint as `f64`, for reporting.
    pub fn midpoint_f64(&self) -> f64 {
        (self.lo.to_f64() + self.hi.to_f64()) / 2.0
    }
}

/// Enclosure of `e^{−λ}` for exact rational `λ`.
pub fn exp_neg_enclosure(lambda: &Rational) -> Enclosure {
    Enclosure::from_rational(lambda).neg().exp()
}

/// Enclosures of the Poisson(λ) pmf at `k = 0, …, k_max` via the stable
/// upward recurrence `p_{k+1} = p_k · λ / (k+1)`.
pub fn poisson_pmf_enclosures(lambda: &Rational, k_max: u64) -> Vec<Enclosure> {
    let lam = Enclosure::from_rational(lambda);
    let mut terms = Vec::with_capacity(k_max as usize + 1);
    let mut term = exp_neg_enclosure(lambda);
    for k in 0..=k_max {
        terms.push(term.clone());
        term = term.mul(&lam).div_positive(&Enclosure::from_u64(k + 1));
    }
    terms
}
