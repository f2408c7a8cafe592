//! Scalar abstraction shared by the interval type and the closed-form bounds.

use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::rational;

/// Ordered field element usable as an interval endpoint.
///
/// The by-reference operations exist so big rationals can route through the
/// cross-reducing helpers in [`crate::rational`] instead of cloning into the
/// generic operators.
pub trait Scalar: Clone + PartialOrd + Debug + Signed + Send + Sync {
    /// `true` when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn from_u64(v: u64) -> Self;
    fn from_ratio(numer: i64, denom: i64) -> Self;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn to_f64(&self) -> f64;

    fn powu(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc.mul_ref(self);
        }
        acc
    }

    fn recip_ref(&self) -> Self {
        Self::one().div_ref(self)
    }

    fn min_ref<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other < self {
            other
        } else {
            self
        }
    }

    fn max_ref<'a>(&'a self, other: &'a Self) -> &'a Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn from_u64(v: u64) -> Self {
                v as $t
            }
            fn from_ratio(numer: i64, denom: i64) -> Self {
                numer as $t / denom as $t
            }
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn div_ref(&self, rhs: &Self) -> Self {
                self / rhs
            }
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            fn powu(&self, exp: u32) -> Self {
                self.powi(exp as i32)
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_u64(v: u64) -> Self {
        rational::from_u64(v)
    }
    fn from_ratio(numer: i64, denom: i64) -> Self {
        rational::ratio(numer, denom)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        rational::add(self, rhs)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        rational::sub(self, rhs)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        rational::mul(self, rhs)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        rational::div(self, rhs)
    }
    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }
    fn powu(&self, exp: u32) -> Self {
        if self.is_zero() {
            return if exp == 0 { Self::from_u64(1) } else { self.clone() };
        }
        num_traits::pow(self.clone(), exp as usize)
    }
}
