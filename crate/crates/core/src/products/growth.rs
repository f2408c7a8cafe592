//! Checks of the 2-adic structure behind the exponential growth of `p_x`
//! and `q_x`.
//!
//! Euler (`∏ (p^s-1)/p^s`): `2^(π-1) | A_x`, `2^s ∥ B_x`,
//! `q_x >= p_x >= 2^(π-s-1)`.
//!
//! Ratio (`∏ (p^2s-1)/(p^2s+1)`): `2^(2π-2) | A_x`, `2^(π-1) ∥ B_x`,
//! `p_x >= 2^(π-s-1)`, `1/4 <= p_x/q_x <= 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{ProductError, ProductKind, ProductRecord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthVerdict {
    pub kind: ProductKind,
    /// Lower bound on `v2(A_x)`.
    pub a_divisibility: bool,
    /// Exact value of `v2(B_x)`.
    pub b_exact_power: bool,
    /// `p_x >= 2^(π(x)-s-1)`.
    pub numerator_growth: bool,
    /// `q_x >= p_x` (euler) or `1/4 <= p_x/q_x <= 1` (ratio).
    pub ordering: bool,
    /// `v2(A_x)` minus its claimed lower bound.
    pub a_slack: i64,
    /// `v2(B_x)` minus its claimed exact value.
    pub b_slack: i64,
    /// `v2(p_x) - (π(x)-s-1)`: how far the 2-part alone clears the bound.
    pub numerator_slack: i64,
}

impl GrowthVerdict {
    pub fn holds(&self) -> bool {
        self.a_divisibility && self.b_exact_power && self.numerator_growth && self.ordering
    }
}

/// `n >= 2^e` for a positive integer `n` and any integer `e`.
pub(crate) fn at_least_pow2(n: &BigInt, e: i64) -> bool {
    e < 0 || (n.is_positive() && n.bits() > e as u64)
}

fn common(record: &ProductRecord, a_claim: i64, b_claim: i64) -> (bool, bool, bool, i64, i64, i64) {
    let pi = record.pi_x as i64;
    let exponent = pi - record.s as i64 - 1;
    let p_x = record.fraction.numer();
    let v2_p = p_x.trailing_zeros().map_or(0, |v| v as i64);
    (
        record.v2_a as i64 >= a_claim,
        record.v2_b as i64 == b_claim,
        at_least_pow2(p_x, exponent),
        record.v2_a as i64 - a_claim,
        record.v2_b as i64 - b_claim,
        v2_p - exponent,
    )
}

pub fn growth_check_euler(record: &ProductRecord) -> Result<GrowthVerdict, ProductError> {
    if record.kind != ProductKind::Euler {
        return Err(ProductError::KindMismatch {
            expected: ProductKind::Euler,
            found: record.kind,
        });
    }
    let pi = record.pi_x as i64;
    let (a, b, num, a_slack, b_slack, numerator_slack) = common(record, pi - 1, record.s as i64);
    Ok(GrowthVerdict {
        kind: ProductKind::Euler,
        a_divisibility: a,
        b_exact_power: b,
        numerator_growth: num,
        ordering: record.fraction.denom() >= record.fraction.numer(),
        a_slack,
        b_slack,
        numerator_slack,
    })
}

pub fn growth_check_ratio(record: &ProductRecord) -> Result<GrowthVerdict, ProductError> {
    if record.kind != ProductKind::Ratio {
        return Err(ProductError::KindMismatch {
            expected: ProductKind::Ratio,
            found: record.kind,
        });
    }
    let pi = record.pi_x as i64;
    let (a, b, num, a_slack, b_slack, numerator_slack) = common(record, 2 * pi - 2, pi - 1);
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let f = &record.fraction;
    Ok(GrowthVerdict {
        kind: ProductKind::Ratio,
        a_divisibility: a,
        b_exact_power: b,
        numerator_growth: num,
        ordering: crate::rational::cmp(&quarter, f).is_le() && f <= &BigRational::one(),
        a_slack,
        b_slack,
        numerator_slack,
    })
}

/// Dispatch on the record kind. `l-chi4` records carry no growth claim.
pub fn growth_check(record: &ProductRecord) -> Result<GrowthVerdict, ProductError> {
    match record.kind {
        ProductKind::Euler => growth_check_euler(record),
        ProductKind::Ratio => growth_check_ratio(record),
        ProductKind::LChi4 => Err(ProductError::KindMismatch {
            expected: ProductKind::Euler,
            found: ProductKind::LChi4,
        }),
    }
}
