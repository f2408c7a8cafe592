use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::interval::{Interval, Verdict};
use crate::primes::PrimeTable;
use crate::products::{self, ProductKind, ProductRecord};
use crate::rational;
use crate::serial::{self, Quantity};
use crate::zeta;
use crate::RationalInterval;

use super::{euler_tail_bound, parameter, BoundsError};

/// Bits kept when ζ(s) enters an inequality; outward rounding keeps the
/// enclosure valid while stopping its denominators from growing.
pub(crate) const ZETA_BITS: u32 = 192;

/// One checked inequality `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LinkVerdict {
    pub name: String,
    pub lhs: Quantity,
    pub rhs: Quantity,
    pub verdict: Verdict,
    /// Guaranteed lower bound on `rhs - lhs` (negative when it fails).
    #[serde(with = "crate::serial::fraction")]
    pub slack: BigRational,
    pub slack_approx: f64,
    /// Whether a failure of this link fails the whole report.
    pub required: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LinkVerdict {
    pub fn compare(name: &str, lhs: RationalInterval, rhs: RationalInterval, required: bool) -> Self {
        let verdict = lhs.le(&rhs);
        let slack = serial::compact_lower(&lhs.slack_to(&rhs));
        LinkVerdict {
            name: name.to_string(),
            lhs: Quantity::Enclosure(lhs).compacted(),
            rhs: Quantity::Enclosure(rhs).compacted(),
            verdict,
            slack_approx: rational::to_f64(&slack),
            slack,
            required,
            note: None,
        }
    }

    pub fn exact(name: &str, lhs: BigRational, rhs: BigRational, required: bool) -> Self {
        Self::compare(name, Interval::point(lhs), Interval::point(rhs), required)
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A required link that does not hold.
    pub fn is_blocking(&self) -> bool {
        self.required && !self.verdict.holds()
    }
}

/// `|f_x - 1/ζ(s)| <= 1/((s-1)·ζ(s)·x^(s-1))` for the Euler partial product
/// `f_x = ∏_{p<=x} (1 - p^-s)`, given an enclosure of ζ(s).
pub fn verify_diff_euler_with(record: &ProductRecord, zeta_s: &RationalInterval) -> Result<LinkVerdict, BoundsError> {
    if record.kind != ProductKind::Euler {
        return Err(products::ProductError::KindMismatch {
            expected: ProductKind::Euler,
            found: record.kind,
        }
        .into());
    }
    let z = zeta_s.round_outward(ZETA_BITS);
    let inv = z.recip().map_err(|_| parameter("zeta", "enclosure contains zero"))?;
    let f = &record.fraction;
    let diff = Interval::new(rational::sub(f, inv.hi()), rational::sub(f, inv.lo())).expect("ordered");
    let tail: BigRational = euler_tail_bound(record.s, record.x.max(1))?;
    let rhs = inv.scale(&tail);
    Ok(LinkVerdict::compare("difference", diff.abs(), rhs, true))
}

/// [`verify_diff_euler_with`] after building the product and an enclosure of
/// ζ(s) from `terms` terms.
pub fn verify_diff_euler(table: &PrimeTable, s: u32, x: u64, terms: u64) -> Result<LinkVerdict, BoundsError> {
    let record = products::euler_partial(table, s, x)?;
    let z = zeta::zeta_interval(s, terms)?;
    verify_diff_euler_with(&record, &z)
}

/// Result of the ratio-product difference check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioDifference {
    pub link: LinkVerdict,
    /// Least `c4` for which `|target - f_x| <= c4/x` holds at this `x`.
    pub min_c4: Quantity,
}

/// `|r - f_x| <= c4/x`, where `f_x` is the ratio partial product and
/// `r = ζ(4s)/ζ(2s)²` its exact limit (`2/5` for `s = 1`).
pub fn verify_diff_ratio_with(record: &ProductRecord, c4: &BigRational) -> Result<RatioDifference, BoundsError> {
    if record.kind != ProductKind::Ratio {
        return Err(products::ProductError::KindMismatch {
            expected: ProductKind::Ratio,
            found: record.kind,
        }
        .into());
    }
    if !c4.is_positive() {
        return Err(parameter("c4", format!("{c4} must be > 0")));
    }
    let limit = rational::div(&rational::from_u64(1), &zeta::zeta_ratio_exact(record.s as u64)?);
    let lhs = rational::sub(&limit, &record.fraction).abs();
    let x = rational::from_u64(record.x.max(1));
    let rhs = rational::div(c4, &x);
    let min_c4 = rational::mul(&lhs, &x);
    Ok(RatioDifference {
        link: LinkVerdict::exact("difference", lhs, rhs, true),
        min_c4: Quantity::Exact(min_c4).compacted(),
    })
}

pub fn verify_diff_ratio(table: &PrimeTable, x: u64, c4: &BigRational) -> Result<RatioDifference, BoundsError> {
    let record = products::ratio_partial(table, 1, x)?;
    verify_diff_ratio_with(&record, c4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn table() -> PrimeTable {
        PrimeTable::new(20_000).unwrap()
    }

    #[test]
    fn euler_example_at_ten() {
        // |1/ζ(2) - 768/1225| ≈ 0.0190 <= 1/(ζ(2)·10) ≈ 0.0608
        let v = verify_diff_euler(&table(), 2, 10, 1000).unwrap();
        assert_eq!(v.verdict, Verdict::Holds);
        assert!((v.lhs.approx() - 0.01900).abs() < 1e-4);
        assert!((v.rhs.approx() - 0.06079).abs() < 1e-4);
        assert!(v.slack.is_positive());
    }

    #[test]
    fn euler_holds_across_range() {
        let t = table();
        let z = zeta::zeta_interval(3, 2000).unwrap();
        let xs: Vec<u64> = vec![2, 3, 10, 97, 1000, 10_000];
        for r in products::sweep(&t, ProductKind::Euler, 3, &xs).unwrap() {
            let v = verify_diff_euler_with(&r, &z).unwrap();
            assert_eq!(v.verdict, Verdict::Holds, "x={}", r.x);
        }
    }

    #[test]
    fn ratio_example_at_ten() {
        let d = verify_diff_ratio(&table(), 10, &ratio(1, 1)).unwrap();
        assert_eq!(d.link.verdict, Verdict::Holds);
        let f = products::ratio_partial(&table(), 1, 10).unwrap().fraction;
        let expected = (ratio(2, 5) - f).abs() * ratio(10, 1);
        assert_eq!(d.min_c4, Quantity::Exact(expected));
    }

    #[test]
    fn ratio_fails_for_tiny_constant() {
        let d = verify_diff_ratio(&table(), 1000, &ratio(1, 1_000_000)).unwrap();
        assert_eq!(d.link.verdict, Verdict::Fails);
        assert!(d.link.is_blocking());
        assert!(d.link.slack.is_negative());
    }

    #[test]
    fn kind_is_checked() {
        let r = products::ratio_partial(&table(), 1, 10).unwrap();
        let z = zeta::zeta_interval(2, 100).unwrap();
        assert!(verify_diff_euler_with(&r, &z).is_err());
        assert!(verify_diff_ratio(&table(), 10, &ratio(0, 1)).is_err());
    }
}
