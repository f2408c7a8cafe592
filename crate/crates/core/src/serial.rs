//! Serde adapters. Big integers travel as decimal strings so nothing is
//! truncated to 64 bits; fractions as `{"numerator", "denominator"}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::interval::Interval;
use crate::{rational, RationalInterval};

pub mod biguint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("invalid unsigned integer {text:?}")))
    }
}

pub mod biguint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|n| n.to_str_radix(10)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<String>::deserialize(d)?
            .into_iter()
            .map(|t| {
                BigUint::parse_bytes(t.as_bytes(), 10)
                    .ok_or_else(|| D::Error::custom(format!("invalid unsigned integer {t:?}")))
            })
            .collect()
    }
}

#[derive(Serialize, Deserialize)]
struct FractionRepr {
    numerator: String,
    denominator: String,
}

fn to_repr(q: &BigRational) -> FractionRepr {
    FractionRepr {
        numerator: q.numer().to_str_radix(10),
        denominator: q.denom().to_str_radix(10),
    }
}

fn from_repr<E: serde::de::Error>(r: FractionRepr) -> Result<BigRational, E> {
    let n = BigInt::parse_bytes(r.numerator.as_bytes(), 10)
        .ok_or_else(|| E::custom(format!("invalid numerator {:?}", r.numerator)))?;
    let d = BigInt::parse_bytes(r.denominator.as_bytes(), 10)
        .ok_or_else(|| E::custom(format!("invalid denominator {:?}", r.denominator)))?;
    if !d.is_positive() {
        return Err(E::custom("denominator must be positive"));
    }
    let q = BigRational::new(n.clone(), d.clone());
    if q.numer() != &n || q.denom() != &d {
        return Err(E::custom("fraction is not in lowest terms"));
    }
    Ok(q)
}

/// Exact, lowest-terms fraction.
pub mod fraction {
    use super::*;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        to_repr(q).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        from_repr(FractionRepr::deserialize(d)?)
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalRepr {
    lo: FractionRepr,
    hi: FractionRepr,
}

/// Exact interval endpoints.
pub mod interval {
    use super::*;

    pub fn serialize<S: Serializer>(v: &RationalInterval, s: S) -> Result<S::Ok, S::Error> {
        IntervalRepr {
            lo: to_repr(v.lo()),
            hi: to_repr(v.hi()),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RationalInterval, D::Error> {
        let r = IntervalRepr::deserialize(d)?;
        let lo = from_repr(r.lo)?;
        let hi = from_repr(r.hi)?;
        Interval::new(lo, hi).map_err(D::Error::custom)
    }
}

/// Bit budget beyond which reported values are rounded to dyadic enclosures.
pub const COMPACT_BITS: u32 = 128;

/// A reported quantity: exact when it is small, otherwise an outward-rounded
/// enclosure on the `2^-128` grid.
#[derive(Clone, Debug, PartialEq)]
pub enum Quantity {
    Exact(BigRational),
    Enclosure(RationalInterval),
}

impl Quantity {
    pub fn as_interval(&self) -> RationalInterval {
        match self {
            Quantity::Exact(q) => Interval::point(q.clone()),
            Quantity::Enclosure(i) => i.clone(),
        }
    }

    pub fn approx(&self) -> f64 {
        match self {
            Quantity::Exact(q) => rational::to_f64(q),
            Quantity::Enclosure(i) => i.midpoint_f64(),
        }
    }

    /// Shrink oversized values for reporting without losing rigor.
    pub fn compacted(&self) -> Quantity {
        let limit = 2 * COMPACT_BITS as u64 + 64;
        match self {
            Quantity::Exact(q) if rational::size_bits(q) > limit => {
                Quantity::Enclosure(Interval::point(q.clone()).round_outward(COMPACT_BITS))
            }
            Quantity::Exact(q) => Quantity::Exact(q.clone()),
            Quantity::Enclosure(i) if i.is_point() && rational::size_bits(i.lo()) <= limit => {
                Quantity::Exact(i.lo().clone())
            }
            Quantity::Enclosure(i) => Quantity::Enclosure(i.compact(COMPACT_BITS)),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Out {
            #[serde(skip_serializing_if = "Option::is_none")]
            exact: Option<FractionRepr>,
            #[serde(skip_serializing_if = "Option::is_none")]
            lo: Option<FractionRepr>,
            #[serde(skip_serializing_if = "Option::is_none")]
            hi: Option<FractionRepr>,
            approx: f64,
        }
        let approx = self.approx();
        let out = match self.compacted() {
            Quantity::Exact(q) => Out {
                exact: Some(to_repr(&q)),
                lo: None,
                hi: None,
                approx,
            },
            Quantity::Enclosure(i) => Out {
                exact: None,
                lo: Some(to_repr(i.lo())),
                hi: Some(to_repr(i.hi())),
                approx,
            },
        };
        out.serialize(s)
    }
}

/// Slack values are lower bounds; oversized ones are rounded down.
pub fn compact_lower(q: &BigRational) -> BigRational {
    if rational::size_bits(q) > 2 * COMPACT_BITS as u64 + 64 {
        rational::floor_dyadic(q, COMPACT_BITS)
    } else {
        q.clone()
    }
}

/// `num/den` text form, e.g. `-1/30`; integers print without a slash.
pub fn fraction_text(q: &BigRational) -> String {
    if q.denom() == &BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parse `a`, `a/b` or a finite decimal like `0.1` or `2.5e-12` into an
/// exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((mantissa, exp)) = t.split_once(['e', 'E']) {
        let exp: i32 = exp.parse().ok()?;
        if mantissa.contains('/') || exp.unsigned_abs() > 10_000 {
            return None;
        }
        let m = parse_rational(mantissa)?;
        let scale = BigRational::from_integer(num_traits::pow(BigInt::from(10), exp.unsigned_abs() as usize));
        return Some(if exp < 0 { m / scale } else { m * scale });
    }
    if let Some((n, d)) = t.split_once('/') {
        let n = BigInt::parse_bytes(n.trim().as_bytes(), 10)?;
        let d = BigInt::parse_bytes(d.trim().as_bytes(), 10)?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let whole = if int_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::parse_bytes(int_digits.as_bytes(), 10)?
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let f = BigInt::parse_bytes(frac.as_bytes(), 10)?;
        let mag = BigRational::new(whole * &scale + f, scale);
        return Some(if negative { -mag } else { mag });
    }
    BigInt::parse_bytes(t.as_bytes(), 10).map(BigRational::from_integer)
}
