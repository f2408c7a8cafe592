//! Partial Euler products as exact reduced fractions.
//!
//! Three families are supported, all truncated at primes `p <= x`:
//!
//! | kind     | factor                                   | limit            |
//! |----------|------------------------------------------|------------------|
//! | `euler`  | `(p^s - 1) / p^s`                        | `1/ζ(s)`         |
//! | `ratio`  | `(p^2s - 1) / (p^2s + 1)`                | `ζ(4s)/ζ(2s)^2`  |
//! | `l-chi4` | `(p^3 - χ(p)) / (p - χ(p))^3`, odd `p`   | `1/2`            |
//!
//! Alongside the reduced value each record keeps the un-reduced numerator
//! `A_x` and denominator `B_x`, since the growth claims are statements about
//! their 2-adic valuations.

mod growth;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::primes::{two_adic_valuation_signed, PrimeTable, PrimesError};
use crate::{rational, serial, ReducedFraction};

pub use growth::{growth_check, growth_check_euler, growth_check_ratio, GrowthVerdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("invalid parameter s = {s}: {reason}")]
    Parameter { s: u32, reason: &'static str },
    #[error(transparent)]
    Primes(#[from] PrimesError),
    #[error("record kind {found} does not match the requested {expected} check")]
    KindMismatch {
        expected: ProductKind,
        found: ProductKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ProductKind {
    #[serde(rename = "euler")]
    Euler,
    #[serde(rename = "ratio")]
    Ratio,
    #[serde(rename = "l-chi4")]
    LChi4,
}

impl ProductKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ProductKind::Euler => "euler",
            ProductKind::Ratio => "ratio",
            ProductKind::LChi4 => "l-chi4",
        }
    }

    /// Exponent used by the l-chi4 family, which has no free parameter.
    pub const L_CHI4_EXPONENT: u32 = 3;
}

impl std::fmt::Display for ProductKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ProductKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euler" => Ok(ProductKind::Euler),
            "ratio" => Ok(ProductKind::Ratio),
            "l-chi4" | "lchi4" => Ok(ProductKind::LChi4),
            other => Err(format!("unknown product kind {other:?} (expected euler, ratio or l-chi4)")),
        }
    }
}

/// Un-reduced `A_x / B_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unreduced {
    pub a: BigInt,
    pub b: BigInt,
}

/// One partial product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRecord {
    pub kind: ProductKind,
    pub s: u32,
    pub x: u64,
    pub pi_x: u64,
    #[serde(with = "serial::fraction")]
    pub fraction: ReducedFraction,
    pub v2_a: u64,
    pub v2_b: u64,
    /// No prime contributed a factor (the value is the empty product 1).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub empty_product: bool,
    #[serde(skip)]
    pub unreduced: Option<Unreduced>,
}

impl ProductRecord {
    pub fn numerator(&self) -> &BigInt {
        self.fraction.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.fraction.denom()
    }
}

/// The factor contributed by prime `p`, as an un-reduced pair.
fn factor(kind: ProductKind, s: u32, p: u64) -> Option<(BigInt, BigInt)> {
    match kind {
        ProductKind::Euler => {
            let ps = rational::pow_u64(p, s);
            Some((&ps - 1, ps))
        }
        ProductKind::Ratio => {
            let ps = rational::pow_u64(p, 2 * s);
            Some((&ps - 1, ps + 1))
        }
        ProductKind::LChi4 => match p % 4 {
            1 => Some((rational::pow_u64(p, 3) - 1, rational::pow_u64(p - 1, 3))),
            3 => Some((rational::pow_u64(p, 3) + 1, rational::pow_u64(p + 1, 3))),
            _ => None, // χ(2) = 0
        },
    }
}

/// Running partial product, fed one prime at a time in increasing order.
///
/// The reduced value is updated by cross-reduction against each new factor,
/// so every step costs time linear in the size of the running fraction.
#[derive(Clone, Debug)]
pub struct Accumulator {
    kind: ProductKind,
    s: u32,
    fraction: BigRational,
    a: BigInt,
    b: BigInt,
    contributed: bool,
    last_prime: u64,
}

impl Accumulator {
    pub fn new(kind: ProductKind, s: u32) -> Self {
        let s = if kind == ProductKind::LChi4 {
            ProductKind::L_CHI4_EXPONENT
        } else {
            s
        };
        Accumulator {
            kind,
            s,
            fraction: BigRational::one(),
            a: BigInt::one(),
            b: BigInt::one(),
            contributed: false,
            last_prime: 0,
        }
    }

    /// Fold in the factor for prime `p`; primes must arrive increasing.
    pub fn absorb(&mut self, p: u64) {
        assert!(p > self.last_prime, "primes must be absorbed in increasing order");
        self.last_prime = p;
        if let Some((num, den)) = factor(self.kind, self.s, p) {
            self.fraction = rational::mul_ratio(&self.fraction, &num, &den);
            self.a *= num;
            self.b *= den;
            self.contributed = true;
        }
    }

    pub fn fraction(&self) -> &BigRational {
        &self.fraction
    }

    pub fn unreduced(&self) -> Unreduced {
        Unreduced {
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// Snapshot as a record for cutoff `x` with `pi_x` primes absorbed.
    pub fn record(&self, x: u64, pi_x: u64) -> ProductRecord {
        ProductRecord {
            kind: self.kind,
            s: self.s,
            x,
            pi_x,
            fraction: self.fraction.clone(),
            v2_a: two_adic_valuation_signed(&self.a),
            v2_b: two_adic_valuation_signed(&self.b),
            empty_product: !self.contributed,
            unreduced: Some(self.unreduced()),
        }
    }
}

fn build(table: &PrimeTable, kind: ProductKind, s: u32, x: u64) -> Result<ProductRecord, ProductError> {
    let primes = table.primes_up_to(x)?;
    let mut acc = Accumulator::new(kind, s);
    for &p in primes {
        acc.absorb(p);
    }
    Ok(acc.record(x, primes.len() as u64))
}

/// `∏_{p<=x} (1 - p^-s)` for the theorem chain; requires `s >= 2`.
pub fn euler_partial(table: &PrimeTable, s: u32, x: u64) -> Result<ProductRecord, ProductError> {
    if s < 2 {
        return Err(ProductError::Parameter {
            s,
            reason: "the Euler chain needs s >= 2 (1/ζ(1) degenerates)",
        });
    }
    build(table, ProductKind::Euler, s, x)
}

/// Euler product for standalone growth checks, where `s = 1` is allowed.
pub fn euler_record(table: &PrimeTable, s: u32, x: u64) -> Result<ProductRecord, ProductError> {
    if s < 1 {
        return Err(ProductError::Parameter { s, reason: "s must be >= 1" });
    }
    build(table, ProductKind::Euler, s, x)
}

/// `∏_{p<=x} (p^2s - 1)/(p^2s + 1)`; requires `s >= 1`.
pub fn ratio_partial(table: &PrimeTable, s: u32, x: u64) -> Result<ProductRecord, ProductError> {
    if s < 1 {
        return Err(ProductError::Parameter { s, reason: "s must be >= 1" });
    }
    build(table, ProductKind::Ratio, s, x)
}

/// Partial product for `L(1,χ)^3 / L(3,χ)` with χ the non-trivial character
/// mod 4: `p ≡ 1` contributes `(p^3-1)/(p-1)^3`, `p ≡ 3` contributes
/// `(p^3+1)/(p+1)^3`.
pub fn l_chi4_partial(table: &PrimeTable, x: u64) -> Result<ProductRecord, ProductError> {
    build(table, ProductKind::LChi4, ProductKind::L_CHI4_EXPONENT, x)
}

/// Records for every cutoff in `xs` (any order), sharing one incremental pass.
pub fn sweep(
    table: &PrimeTable,
    kind: ProductKind,
    s: u32,
    xs: &[u64],
) -> Result<Vec<ProductRecord>, ProductError> {
    if kind != ProductKind::LChi4 && s == 0 {
        return Err(ProductError::Parameter { s, reason: "s must be >= 1" });
    }
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by_key(|&i| xs[i]);
    let mut out: Vec<Option<ProductRecord>> = vec![None; xs.len()];
    let mut acc = Accumulator::new(kind, s);
    let primes = table.primes();
    let mut next = 0usize;
    for i in order {
        let x = xs[i];
        if x > table.limit() {
            return Err(PrimesError::Coverage { x, limit: table.limit() }.into());
        }
        while next < primes.len() && primes[next] <= x {
            acc.absorb(primes[next]);
            next += 1;
        }
        out[i] = Some(acc.record(x, next as u64));
    }
    Ok(out.into_iter().map(|r| r.expect("filled")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use num_traits::Signed;

    fn table() -> PrimeTable {
        PrimeTable::new(10_000).unwrap()
    }

    /// Multiply every factor with no intermediate reduction, reduce once.
    fn naive(kind: ProductKind, s: u32, x: u64) -> BigRational {
        let mut a = BigInt::one();
        let mut b = BigInt::one();
        for p in (2..=x).filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)) {
            let (num, den): (BigInt, BigInt) = match kind {
                ProductKind::Euler => (BigInt::from(p).pow(s) - 1, BigInt::from(p).pow(s)),
                ProductKind::Ratio => (BigInt::from(p).pow(2 * s) - 1, BigInt::from(p).pow(2 * s) + 1),
                ProductKind::LChi4 if p % 4 == 1 => (BigInt::from(p).pow(3) - 1, BigInt::from(p - 1).pow(3)),
                ProductKind::LChi4 if p % 4 == 3 => (BigInt::from(p).pow(3) + 1, BigInt::from(p + 1).pow(3)),
                ProductKind::LChi4 => continue,
            };
            a *= num;
            b *= den;
        }
        BigRational::new(a, b)
    }

    #[test]
    fn euler_examples() {
        let t = table();
        assert_eq!(euler_partial(&t, 2, 2).unwrap().fraction, ratio(3, 4));
        assert_eq!(euler_partial(&t, 2, 5).unwrap().fraction, ratio(16, 25));
        assert_eq!(euler_partial(&t, 2, 10).unwrap().fraction, ratio(768, 1225));
        assert!(matches!(euler_partial(&t, 1, 10), Err(ProductError::Parameter { s: 1, .. })));
        let empty = euler_partial(&t, 2, 1).unwrap();
        assert!(empty.empty_product && empty.fraction.is_one() && empty.pi_x == 0);
    }

    #[test]
    fn ratio_examples() {
        let t = table();
        assert_eq!(ratio_partial(&t, 1, 2).unwrap().fraction, ratio(3, 5));
        assert_eq!(ratio_partial(&t, 1, 5).unwrap().fraction, ratio(144, 325));
        assert!(ratio_partial(&t, 0, 5).is_err());
    }

    #[test]
    fn l_chi4_examples() {
        let t = table();
        assert_eq!(l_chi4_partial(&t, 3).unwrap().fraction, ratio(7, 16));
        assert_eq!(l_chi4_partial(&t, 5).unwrap().fraction, ratio(217, 256));
        let empty = l_chi4_partial(&t, 2).unwrap();
        assert!(empty.empty_product && empty.fraction.is_one());
    }

    #[test]
    fn coverage_error_beyond_table() {
        let t = PrimeTable::new(100).unwrap();
        assert!(matches!(euler_partial(&t, 2, 101), Err(ProductError::Primes(_))));
    }

    #[test]
    fn incremental_reduction_matches_naive_oracle() {
        let t = table();
        for x in (2..=200).step_by(7).chain([199, 200]) {
            for s in 1..=3 {
                assert_eq!(euler_record(&t, s, x).unwrap().fraction, naive(ProductKind::Euler, s, x));
                assert_eq!(ratio_partial(&t, s, x).unwrap().fraction, naive(ProductKind::Ratio, s, x));
            }
            assert_eq!(l_chi4_partial(&t, x).unwrap().fraction, naive(ProductKind::LChi4, 3, x));
        }
    }

    #[test]
    fn record_fraction_equals_reduced_unreduced_pair() {
        let t = table();
        for rec in [
            euler_partial(&t, 2, 97).unwrap(),
            ratio_partial(&t, 2, 97).unwrap(),
            l_chi4_partial(&t, 97).unwrap(),
        ] {
            let u = rec.unreduced.as_ref().unwrap();
            assert_eq!(BigRational::new(u.a.clone(), u.b.clone()), rec.fraction);
            assert_eq!(rec.v2_a, u.a.trailing_zeros().unwrap());
            assert_eq!(rec.pi_x, 25);
        }
    }

    #[test]
    fn euler_product_decreases_at_primes_only() {
        let t = table();
        let xs: Vec<u64> = (2..=500).collect();
        let recs = sweep(&t, ProductKind::Euler, 2, &xs).unwrap();
        for w in recs.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            assert!(b.fraction.is_positive() && b.fraction <= BigRational::one());
            if t.contains(b.x) {
                assert!(b.fraction < a.fraction);
            } else {
                assert_eq!(b.fraction, a.fraction);
            }
        }
    }

    #[test]
    fn ratio_product_decreases_toward_two_fifths() {
        let t = table();
        let xs: Vec<u64> = (2..=2000).collect();
        let recs = sweep(&t, ProductKind::Ratio, 1, &xs).unwrap();
        let target = ratio(2, 5);
        for w in recs.windows(2) {
            assert!(w[1].fraction > target && w[1].fraction <= BigRational::one());
            if t.contains(w[1].x) {
                assert!(w[1].fraction < w[0].fraction);
            }
        }
    }

    #[test]
    fn sweep_preserves_input_order() {
        let t = table();
        let recs = sweep(&t, ProductKind::Ratio, 1, &[5, 2, 10]).unwrap();
        assert_eq!(recs.iter().map(|r| r.x).collect::<Vec<_>>(), vec![5, 2, 10]);
        assert_eq!(recs[0].fraction, ratio(144, 325));
    }
}
