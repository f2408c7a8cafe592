//! Rigorous natural-logarithm enclosures with rational endpoints.
//!
//! `ln q = k·ln 2 + 2·atanh(y)` with `q = m·2^k`, `m ∈ [1, 2)` and
//! `y = (m-1)/(m+1) ∈ [0, 1/3)`. The atanh series is summed in fixed point
//! with directed rounding, and the truncated remainder is bounded by
//! `y^(2K+1) / ((2K+1)(1-y²)) <= (9/8)·y^(2K+1)/(2K+1)`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::interval::Interval;
use crate::RationalInterval;

/// Default working precision, in fractional bits.
pub const DEFAULT_BITS: u32 = 128;

const GUARD_BITS: u32 = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogError {
    #[error("logarithm of a non-positive number")]
    NonPositive,
}

/// Fixed-point enclosure `[lo, hi]·2^-w` of `atanh(y)` for `0 <= y <= 1/3`.
fn atanh_fixed(y: &BigRational, w: u32) -> (BigInt, BigInt) {
    let scale = BigInt::one() << w as usize;
    let ylo = (y.numer() * &scale).div_floor(y.denom());
    let yhi = (y.numer() * &scale).div_ceil(y.denom());
    if yhi.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let y2lo = (&ylo * &ylo) >> w as usize;
    let y2hi = (&yhi * &yhi).div_ceil(&scale);

    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut pow_lo = ylo;
    let mut pow_hi = yhi;
    let mut k: u64 = 0;
    loop {
        let odd = BigInt::from(2 * k + 1);
        if pow_hi <= BigInt::from(8) {
            // remainder from this term on: (9/8)·y^(2k+1)/(2k+1), rounded up
            sum_hi += (&pow_hi * 9u32).div_ceil(&(odd * 8u32)) + 1u32;
            break;
        }
        sum_lo += &pow_lo / &odd;
        sum_hi += pow_hi.div_ceil(&odd);
        pow_lo = (&pow_lo * &y2lo) >> w as usize;
        pow_hi = (&pow_hi * &y2hi).div_ceil(&scale);
        k += 1;
    }
    (sum_lo, sum_hi)
}

fn ln2_fixed(w: u32) -> (BigInt, BigInt) {
    let (lo, hi) = atanh_fixed(&BigRational::new(BigInt::one(), BigInt::from(3)), w);
    (lo << 1usize, hi << 1usize)
}

fn to_interval(lo: BigInt, hi: BigInt, w: u32) -> RationalInterval {
    let scale = BigInt::one() << w as usize;
    Interval::new(BigRational::new(lo, scale.clone()), BigRational::new(hi, scale))
        .expect("directed rounding keeps lo <= hi")
}

/// Enclosure of `ln 2` with error below `2^-bits`.
pub fn ln2(bits: u32) -> RationalInterval {
    let w = bits + GUARD_BITS;
    let (lo, hi) = ln2_fixed(w);
    to_interval(lo, hi, w)
}

/// `floor(log2 q)` for `q > 0`.
fn floor_log2(q: &BigRational) -> i64 {
    let n = q.numer().magnitude();
    let d = q.denom().magnitude();
    let mut k = n.bits() as i64 - d.bits() as i64;
    // q >= 2^k  <=>  n >= d·2^k
    let ge = |k: i64| -> bool {
        if k >= 0 {
            *n >= d << k as usize
        } else {
            (n << (-k) as usize) >= *d
        }
    };
    if !ge(k) {
        k -= 1;
    }
    debug_assert!(ge(k) && !ge(k + 1));
    k
}

/// Enclosure of `ln q` for rational `q > 0`, with width about `2^-bits`
/// times `max(1, |log2 q|)`.
pub fn ln(q: &BigRational, bits: u32) -> Result<RationalInterval, LogError> {
    if !q.is_positive() {
        return Err(LogError::NonPositive);
    }
    if q.is_one() {
        return Ok(Interval::point(BigRational::zero()));
    }
    let k = floor_log2(q);
    // mantissa m = q / 2^k in [1, 2)
    let m = if k >= 0 {
        BigRational::new(q.numer().clone(), q.denom() << k as usize)
    } else {
        BigRational::new(q.numer() << (-k) as usize, q.denom().clone())
    };
    let one = BigRational::one();
    let y = (&m - &one) / (&m + &one);

    let extra = 64 - (k.unsigned_abs().max(1)).leading_zeros();
    let w = bits + GUARD_BITS + extra;
    let (alo, ahi) = atanh_fixed(&y, w);
    let (l2lo, l2hi) = ln2_fixed(w);
    let kb = BigInt::from(k);
    let (klo, khi) = if k >= 0 {
        (&kb * &l2lo, &kb * &l2hi)
    } else {
        (&kb * &l2hi, &kb * &l2lo)
    };
    Ok(to_interval(klo + (alo << 1usize), khi + (ahi << 1usize), w))
}

pub fn ln_u64(x: u64, bits: u32) -> Result<RationalInterval, LogError> {
    ln(&BigRational::from_integer(BigInt::from(x)), bits)
}

/// Enclosure of `ln` over a positive interval (monotone).
pub fn ln_interval(x: &RationalInterval, bits: u32) -> Result<RationalInterval, LogError> {
    let lo = ln(x.lo(), bits)?;
    let hi = if x.is_point() { lo.clone() } else { ln(x.hi(), bits)? };
    Ok(Interval::new(lo.lo().clone(), hi.hi().clone()).expect("ln is monotone"))
}

/// Enclosure of `log2 n` for a positive integer of any size, using the
/// leading 64 bits: `n ∈ [t·2^e, (t+1)·2^e)`.
pub fn log2_biguint(n: &BigUint, bits: u32) -> Result<RationalInterval, LogError> {
    if n.is_zero() {
        return Err(LogError::NonPositive);
    }
    if n.count_ones() == 1 {
        let e = BigRational::from_integer(BigInt::from(n.bits() - 1));
        return Ok(Interval::point(e));
    }
    if n.bits() <= 64 {
        let v = n.to_u64().expect("fits");
        let l = ln_u64(v, bits)?;
        return Ok(l.div(&ln2(bits)).expect("ln 2 > 0"));
    }
    let e = n.bits() - 64;
    let top = n >> e as usize;
    let exact = (&top << e as usize) == *n;
    let t = top.to_u64().expect("64 bits");
    let l2 = ln2(bits);
    let lo = ln_u64(t, bits)?.div(&l2).expect("ln 2 > 0");
    let hi = if exact {
        lo.clone()
    } else {
        ln(&BigRational::from_integer(BigInt::from(t) + 1), bits)?
            .div(&l2)
            .expect("ln 2 > 0")
    };
    let shift = BigRational::from_integer(BigInt::from(e));
    Ok(Interval::new(lo.lo() + &shift, hi.hi() + &shift).expect("monotone"))
}
