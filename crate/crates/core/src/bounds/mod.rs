//! Tail bounds, difference inequalities, irrationality-measure gaps and the
//! resulting lower bounds for π(x), assembled into per-link verdict reports.

mod chain;
mod diff;
mod lower;
mod measure;
mod tail;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primes::PrimesError;
use crate::products::ProductError;
use crate::rational;
use crate::zeta::ZetaError;

pub use chain::{
    verify_chain, BoundReport, Chain, ChainContext, ChainSettings, DEFAULT_TERMS, DEFAULT_X0, RATIO_CHAIN_OFFSET_S,
};
pub use diff::{
    verify_diff_euler, verify_diff_euler_with, verify_diff_ratio, verify_diff_ratio_with, LinkVerdict,
    RatioDifference,
};
pub use lower::{pi_lower_bound_euler, pi_lower_bound_ratio, sweep_theorem, PiBound, PiBoundModel, TheoremSweep};
pub use measure::{log2_measure_gap, measure_gap, measure_gap_exponent, MeasureGap, DEFAULT_ROOT_BITS};
pub use tail::{euler_tail_bound, ratio_tail_bound};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("invalid {name}: {reason}")]
    Parameter { name: &'static str, reason: String },
    #[error(transparent)]
    Products(#[from] ProductError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Primes(#[from] PrimesError),
}

fn parameter(name: &'static str, reason: impl Into<String>) -> BoundsError {
    BoundsError::Parameter {
        name,
        reason: reason.into(),
    }
}

/// Irrationality measure μ and margin ε, both exact.
///
/// Admissible measures are `μ = 1` (rational numbers) or `μ >= 2`
/// (irrationals); nothing in between is the measure of any real.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrationalityParams {
    #[serde(with = "crate::serial::fraction")]
    mu: BigRational,
    #[serde(with = "crate::serial::fraction")]
    eps: BigRational,
}

impl IrrationalityParams {
    pub fn new(mu: BigRational, eps: BigRational) -> Result<Self, BoundsError> {
        let one = rational::from_u64(1);
        if mu != one && mu < rational::from_u64(2) {
            return Err(parameter("mu", format!("{mu} is not in {{1}} ∪ [2, ∞)")));
        }
        if eps <= rational::from_u64(0) {
            return Err(parameter("eps", format!("{eps} must be > 0")));
        }
        Ok(IrrationalityParams { mu, eps })
    }

    /// μ = 2, ε = 1/10: the defaults for irrational ζ(s).
    pub fn irrational_default() -> Self {
        IrrationalityParams {
            mu: rational::from_u64(2),
            eps: rational::ratio(1, 10),
        }
    }

    /// μ = 1, ε = 1/10: the defaults for a rational target.
    pub fn rational_default() -> Self {
        IrrationalityParams {
            mu: rational::from_u64(1),
            eps: rational::ratio(1, 10),
        }
    }

    pub fn mu(&self) -> &BigRational {
        &self.mu
    }

    pub fn eps(&self) -> &BigRational {
        &self.eps
    }

    /// `μ + ε`.
    pub fn exponent(&self) -> BigRational {
        &self.mu + &self.eps
    }
}

/// Known irrationality measures, kept for reference.
#[derive(Clone, Debug, PartialEq)]
pub enum MeasureClass {
    /// μ = 1.
    Rational,
    /// μ = 2 (Roth).
    AlgebraicIrrational,
    /// μ >= 2.
    Irrational,
    /// `Σ b^-⌊τ^n⌋` in base `b >= 3` has μ = τ for any τ >= 2.
    Mahler { tau: BigRational },
}

impl MeasureClass {
    /// Least possible measure for the class.
    pub fn mu(&self) -> BigRational {
        match self {
            MeasureClass::Rational => rational::from_u64(1),
            MeasureClass::AlgebraicIrrational | MeasureClass::Irrational => rational::from_u64(2),
            MeasureClass::Mahler { tau } => tau.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn params_respect_measure_taxonomy() {
        assert!(IrrationalityParams::new(ratio(1, 1), ratio(1, 10)).is_ok());
        assert!(IrrationalityParams::new(ratio(2, 1), ratio(1, 10)).is_ok());
        assert!(IrrationalityParams::new(ratio(5, 2), ratio(1, 100)).is_ok());
        assert!(IrrationalityParams::new(ratio(3, 2), ratio(1, 10)).is_err());
        assert!(IrrationalityParams::new(ratio(1, 2), ratio(1, 10)).is_err());
        assert!(IrrationalityParams::new(ratio(2, 1), ratio(0, 1)).is_err());
        assert_eq!(IrrationalityParams::irrational_default().exponent(), ratio(21, 10));
        assert_eq!(MeasureClass::Mahler { tau: ratio(7, 2) }.mu(), ratio(7, 2));
        assert_eq!(MeasureClass::Rational.mu(), ratio(1, 1));
    }
}
