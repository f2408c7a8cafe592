//! Exact-arithmetic engine for partial Euler products and the prime-counting
//! lower bounds built on them.
//!
//! Every verdict produced by this crate is a comparison between rationals or
//! between disjoint rational intervals. Floating point only ever shows up in
//! human-facing projections (`approx` fields, CSV columns).
//!
//! The numeric layer is generic over [`Scalar`], so the same interval and
//! closed-form bound code runs on `f32`, `f64` or exact big rationals. The
//! aliases below pin the exact instantiations the verification paths use.

pub mod bounds;
pub mod interval;
pub mod logarithm;
pub mod primes;
pub mod products;
pub mod rational;
pub mod scalar;
pub mod sequences;
pub mod serial;
pub mod zeta;

use num_rational::BigRational;

pub use interval::{Interval, Verdict};
pub use scalar::Scalar;

/// Exact rational in lowest terms with a positive denominator.
pub type ReducedFraction = BigRational;

/// Closed interval with exact rational endpoints.
pub type RationalInterval = Interval<BigRational>;

/// Double-precision interval, used for plotting projections only.
pub type FloatInterval = Interval<f64>;

/// Single-precision interval.
pub type Float32Interval = Interval<f32>;
