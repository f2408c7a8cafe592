//! Big-rational helpers tuned for the shapes that dominate this crate: a huge
//! running product or sum combined with a small factor or term.
//!
//! `num_rational` reduces every result with a full binary gcd of both
//! operands. When one side is a word-sized integer that costs quadratic time
//! in the size of the other side. The routines here use Henrici's
//! cross-reduction and a gcd that first folds the large operand modulo the
//! small one, so appending one small factor stays linear.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Greatest common divisor with a fast path when the operands differ in size.
pub fn gcd(a: &BigUint, b: &BigUint) -> BigUint {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if let Some(s) = small.to_u64() {
        let r = (big % s).to_u64().unwrap_or(0);
        return BigUint::from(gcd_u64(s, r));
    }
    if big.bits() > small.bits() + 64 {
        let r = big % small;
        if r.is_zero() {
            return small.clone();
        }
        return small.gcd(&r);
    }
    big.gcd(small)
}

fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(gcd(a.magnitude(), b.magnitude()))
}

/// Product of two reduced fractions, reduced by cross-cancellation.
pub fn mul(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() || y.is_zero() {
        return BigRational::zero();
    }
    let g1 = gcd_int(x.numer(), y.denom());
    let g2 = gcd_int(y.numer(), x.denom());
    let numer = (x.numer() / &g1) * (y.numer() / &g2);
    let denom = (x.denom() / &g2) * (y.denom() / &g1);
    BigRational::new_raw(numer, denom)
}

/// Multiply a reduced fraction by `numer/denom`, which need not be reduced.
pub fn mul_ratio(x: &BigRational, numer: &BigInt, denom: &BigInt) -> BigRational {
    assert!(!denom.is_zero(), "zero denominator");
    let g = gcd_int(numer, denom);
    let (mut n, mut d) = (numer / &g, denom / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    mul(x, &BigRational::new_raw(n, d))
}

/// Sum of two reduced fractions (Henrici).
pub fn add(x: &BigRational, y: &BigRational) -> BigRational {
    if x.is_zero() {
        return y.clone();
    }
    if y.is_zero() {
        return x.clone();
    }
    let (a, b) = (x.numer(), x.denom());
    let (c, d) = (y.numer(), y.denom());
    let g = gcd_int(b, d);
    if g.is_one() {
        return BigRational::new_raw(a * d + c * b, b * d);
    }
    let b1 = b / &g;
    let d1 = d / &g;
    let t = a * &d1 + c * &b1;
    if t.is_zero() {
        return BigRational::zero();
    }
    let g2 = gcd_int(&t, &g);
    BigRational::new_raw(&t / &g2, b1 * (d / &g2))
}

pub fn sub(x: &BigRational, y: &BigRational) -> BigRational {
    add(x, &-y)
}

/// Quotient of two reduced fractions. Panics on division by zero.
pub fn div(x: &BigRational, y: &BigRational) -> BigRational {
    assert!(!y.is_zero(), "division by zero");
    mul(x, &y.recip())
}

/// Compare by cross-multiplication; denominators are positive.
pub fn cmp(x: &BigRational, y: &BigRational) -> Ordering {
    (x.numer() * y.denom()).cmp(&(y.numer() * x.denom()))
}

pub fn from_u64(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn from_i64(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_biguint(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, v))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new_raw(BigInt::one(), p)
    }
}

/// Largest multiple of `2^-bits` that is `<= q`.
pub fn floor_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scaled = (q.numer() << bits as usize).div_floor(q.denom());
    BigRational::new(scaled, BigInt::one() << bits as usize)
}

/// Smallest multiple of `2^-bits` that is `>= q`.
pub fn ceil_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scaled = (q.numer() << bits as usize).div_ceil(q.denom());
    BigRational::new(scaled, BigInt::one() << bits as usize)
}

/// Total bit size of numerator and denominator.
pub fn size_bits(q: &BigRational) -> u64 {
    q.numer().bits() + q.denom().bits()
}

/// Lossy conversion for reporting. Saturates to `0.0` or `±inf` outside the
/// `f64` range.
pub fn to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    // Align to 64 significant bits, then let the exponent absorb the rest.
    let shift = q.numer().bits() as i64 - q.denom().bits() as i64 - 64;
    let scaled = if shift >= 0 {
        q.numer() / (q.denom() << shift as usize)
    } else {
        (q.numer() << (-shift) as usize) / q.denom()
    };
    let mantissa = scaled.to_f64().unwrap_or(0.0);
    if shift > i32::MAX as i64 {
        return mantissa.signum() * f64::INFINITY;
    }
    if shift < i32::MIN as i64 {
        return 0.0;
    }
    mantissa * 2f64.powi(shift as i32)
}

/// `p^e` as a big integer.
pub fn pow_u64(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}
