//! Closed intervals and three-valued comparisons.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("interval endpoints out of order")]
    Reversed,
    #[error("interval contains zero")]
    ContainsZero,
}

/// Outcome of checking `lhs <= rhs` when either side may be an enclosure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// Every point of `lhs` is `<=` every point of `rhs`.
    Holds,
    /// Every point of `lhs` is `>` every point of `rhs`.
    Fails,
    /// The enclosures overlap; tighter enclosures are needed.
    Indeterminate,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Holds
    }

    pub fn fails(self) -> bool {
        self == Verdict::Fails
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self, IntervalError> {
        if lo > hi {
            return Err(IntervalError::Reversed);
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: T) -> Self {
        Interval { lo: v.clone(), hi: v }
    }

    pub fn lo(&self) -> &T {
        &self.lo
    }

    pub fn hi(&self) -> &T {
        &self.hi
    }

    pub fn into_bounds(self) -> (T, T) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> T {
        self.hi.sub_ref(&self.lo)
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &T) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&T::zero())
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Interval {
            lo: self.lo.add_ref(&rhs.lo),
            hi: self.hi.add_ref(&rhs.hi),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Interval {
            lo: self.lo.sub_ref(&rhs.hi),
            hi: self.hi.sub_ref(&rhs.lo),
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn add_scalar(&self, v: &T) -> Self {
        Interval {
            lo: self.lo.add_ref(v),
            hi: self.hi.add_ref(v),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let zero = T::zero();
        // Sign-split fast path for the common all-non-negative case.
        if self.lo >= zero && rhs.lo >= zero {
            return Interval {
                lo: self.lo.mul_ref(&rhs.lo),
                hi: self.hi.mul_ref(&rhs.hi),
            };
        }
        let products = [
            self.lo.mul_ref(&rhs.lo),
            self.lo.mul_ref(&rhs.hi),
            self.hi.mul_ref(&rhs.lo),
            self.hi.mul_ref(&rhs.hi),
        ];
        let mut lo = &products[0];
        let mut hi = &products[0];
        for p in &products[1..] {
            lo = lo.min_ref(p);
            hi = hi.max_ref(p);
        }
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }

    pub fn scale(&self, v: &T) -> Self {
        let a = self.lo.mul_ref(v);
        let b = self.hi.mul_ref(v);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn recip(&self) -> Result<Self, IntervalError> {
        if self.contains_zero() {
            return Err(IntervalError::ContainsZero);
        }
        Ok(Interval {
            lo: self.hi.recip_ref(),
            hi: self.lo.recip_ref(),
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, IntervalError> {
        Ok(self.mul(&rhs.recip()?))
    }

    /// Interval hull of `|x|` over the interval.
    pub fn abs(&self) -> Self {
        let zero = T::zero();
        if self.lo >= zero {
            self.clone()
        } else if self.hi <= zero {
            self.neg()
        } else {
            let m = (-self.lo.clone()).max_ref(&self.hi).clone();
            Interval { lo: zero, hi: m }
        }
    }

    /// Three-valued `self <= rhs`.
    pub fn le(&self, rhs: &Self) -> Verdict {
        if self.hi <= rhs.lo {
            Verdict::Holds
        } else if self.lo > rhs.hi {
            Verdict::Fails
        } else {
            Verdict::Indeterminate
        }
    }

    /// Guaranteed lower bound on `rhs - self`.
    pub fn slack_to(&self, rhs: &Self) -> T {
        rhs.lo.sub_ref(&self.hi)
    }

    pub fn midpoint_f64(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    pub fn to_f64(&self) -> Interval<f64> {
        Interval {
            lo: self.lo.to_f64(),
            hi: self.hi.to_f64(),
        }
    }
}

impl Interval<BigRational> {
    /// Widen outward to endpoints on the `2^-bits` grid.
    pub fn round_outward(&self, bits: u32) -> Self {
        Interval {
            lo: rational::floor_dyadic(&self.lo, bits),
            hi: rational::ceil_dyadic(&self.hi, bits),
        }
    }

    /// Like [`Self::round_outward`] but leaves endpoints that are already
    /// small untouched.
    pub fn compact(&self, bits: u32) -> Self {
        let limit = 2 * bits as u64 + 64;
        let lo = if rational::size_bits(&self.lo) > limit {
            rational::floor_dyadic(&self.lo, bits)
        } else {
            self.lo.clone()
        };
        let hi = if rational::size_bits(&self.hi) > limit {
            rational::ceil_dyadic(&self.hi, bits)
        } else {
            self.hi.clone()
        };
        Interval { lo, hi }
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}
