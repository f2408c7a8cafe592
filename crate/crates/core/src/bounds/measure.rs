use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::logarithm::{self, DEFAULT_BITS};
use crate::RationalInterval;

use super::{parameter, BoundsError, IrrationalityParams};

/// Fractional bits used when `q^-(μ+ε)` has to be bracketed by integer roots.
pub const DEFAULT_ROOT_BITS: u32 = 32;

/// Bracket `lower <= q^-(μ+ε) <= upper`; `exact` when both are equal.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureGap {
    #[serde(with = "crate::serial::fraction")]
    pub lower: BigRational,
    #[serde(with = "crate::serial::fraction")]
    pub upper: BigRational,
    pub exact: bool,
}

/// `q^-(μ+ε)`, the gap every rational `p/q` keeps from a number of
/// irrationality measure μ (for large `q`).
pub fn measure_gap(q: &BigUint, params: &IrrationalityParams) -> Result<MeasureGap, BoundsError> {
    measure_gap_exponent(q, &params.exponent(), DEFAULT_ROOT_BITS)
}

/// `q^-e` for a rational exponent `e = a/b >= 0`.
///
/// Integer exponents are exact. Otherwise `r = ⌊(q^a·2^(b·K))^(1/b)⌋` gives
/// `2^K/(r+1) <= q^-e <= 2^K/r` with `K = root_bits`.
pub fn measure_gap_exponent(q: &BigUint, exponent: &BigRational, root_bits: u32) -> Result<MeasureGap, BoundsError> {
    if q.is_zero() {
        return Err(parameter("q", "must be >= 1"));
    }
    if exponent.is_negative() {
        return Err(parameter("exponent", format!("{exponent} must be >= 0")));
    }
    let exact = |v: BigRational| MeasureGap {
        lower: v.clone(),
        upper: v,
        exact: true,
    };
    if q.is_one() || exponent.is_zero() {
        return Ok(exact(BigRational::one()));
    }
    let a = exponent
        .numer()
        .to_u32()
        .ok_or_else(|| parameter("exponent", "numerator too large"))?;
    let b = exponent
        .denom()
        .to_u32()
        .ok_or_else(|| parameter("exponent", "denominator too large"))?;
    let qa = BigInt::from(q.pow(a));
    if b == 1 {
        return Ok(exact(BigRational::new(BigInt::one(), qa)));
    }
    let scale = BigInt::one() << root_bits as usize;
    let t = qa << (b as usize * root_bits as usize);
    let r = t.nth_root(b);
    if r.pow(b) == t {
        return Ok(exact(BigRational::new(scale, r)));
    }
    Ok(MeasureGap {
        lower: BigRational::new(scale.clone(), &r + 1),
        upper: BigRational::new(scale, r),
        exact: false,
    })
}

/// Enclosure of `log2 q^-(μ+ε) = -(μ+ε)·log2 q`, usable for any size of `q`.
pub fn log2_measure_gap(q: &BigUint, params: &IrrationalityParams) -> Result<RationalInterval, BoundsError> {
    let l = logarithm::log2_biguint(q, DEFAULT_BITS).map_err(|_| parameter("q", "must be >= 1"))?;
    Ok(l.scale(&-params.exponent()))
}
