//! Exact Bernoulli numbers, rational zeta ratios, and rational enclosures of
//! ζ(s) at integers `s >= 2`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::interval::Interval;
use crate::{rational, RationalInterval, ReducedFraction};

/// Largest Bernoulli index served by default.
pub const DEFAULT_BERNOULLI_MAX: usize = 400;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZetaError {
    #[error("Bernoulli index {m} exceeds the cache capacity {max}")]
    Capacity { m: usize, max: usize },
    #[error("invalid parameter {name} = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: u64,
        reason: &'static str,
    },
}

/// `B_0 ..= B_max`, with `B_1 = -1/2`.
#[derive(Clone, Debug)]
pub struct BernoulliCache {
    values: Vec<BigRational>,
}

impl BernoulliCache {
    /// Fill the table from `Σ_{j=0}^{m} C(m+1, j)·B_j = 0`.
    pub fn new(max: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max + 1);
        values.push(BigRational::one());
        for m in 1..=max {
            if m > 1 && m % 2 == 1 {
                values.push(BigRational::zero());
                continue;
            }
            // C(m+1, j) walked up row-wise from C(m+1, 0) = 1.
            let mut binom = BigInt::one();
            let mut sum = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    let term = BigRational::new_raw(b.numer() * &binom, b.denom().clone());
                    sum = rational::add(&sum, &term);
                }
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            let bm = rational::div(&-sum, &rational::from_u64(m as u64 + 1));
            values.push(bm);
        }
        BernoulliCache { values }
    }

    /// Process-wide cache of capacity [`DEFAULT_BERNOULLI_MAX`].
    pub fn shared() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(|| BernoulliCache::new(DEFAULT_BERNOULLI_MAX))
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, m: usize) -> Result<&BigRational, ZetaError> {
        self.values.get(m).ok_or(ZetaError::Capacity { m, max: self.max() })
    }
}

/// `B_m` from the shared cache.
pub fn bernoulli(m: usize) -> Result<ReducedFraction, ZetaError> {
    BernoulliCache::shared().get(m).cloned()
}

fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn check_n(n: u64) -> Result<(), ZetaError> {
    if n == 0 {
        return Err(ZetaError::Parameter {
            name: "n",
            value: n,
            reason: "must be >= 1",
        });
    }
    Ok(())
}

/// `r` with `ζ(2n) = r·π^(2n)`: `r = (-1)^(n-1)·2^(2n-1)·B_2n / (2n)!`.
pub fn zeta_even_coefficient_with(cache: &BernoulliCache, n: u64) -> Result<ReducedFraction, ZetaError> {
    check_n(n)?;
    let b = cache.get(2 * n as usize)?;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let scale = BigRational::new(BigInt::from(sign) << (2 * n - 1) as usize, factorial(2 * n));
    Ok(rational::mul(&scale, b))
}

pub fn zeta_even_coefficient(n: u64) -> Result<ReducedFraction, ZetaError> {
    zeta_even_coefficient_with(BernoulliCache::shared(), n)
}

/// `ζ(2n)^2 / ζ(4n) = -(4n)!·B_2n^2 / (2·((2n)!)^2·B_4n)`.
///
/// The leading minus makes the value positive: `B_4n < 0` for every `n`.
pub fn zeta_ratio_exact_with(cache: &BernoulliCache, n: u64) -> Result<ReducedFraction, ZetaError> {
    check_n(n)?;
    let b2 = cache.get(2 * n as usize)?;
    let b4 = cache.get(4 * n as usize)?;
    let f2 = factorial(2 * n);
    let num = rational::mul(&BigRational::from_integer(-factorial(4 * n)), &rational::mul(b2, b2));
    let den = rational::mul(&BigRational::from_integer(BigInt::from(2) * &f2 * &f2), b4);
    Ok(rational::div(&num, &den))
}

pub fn zeta_ratio_exact(n: u64) -> Result<ReducedFraction, ZetaError> {
    zeta_ratio_exact_with(BernoulliCache::shared(), n)
}

/// Exact `Σ_{n<=terms} n^-s`.
pub fn zeta_partial_sum(s: u32, terms: u64) -> BigRational {
    let mut sum = BigRational::zero();
    for n in 1..=terms {
        let term = BigRational::new_raw(BigInt::one(), rational::pow_u64(n, s));
        sum = rational::add(&sum, &term);
    }
    sum
}

/// Rational enclosure of ζ(s) from the partial sum to `N = terms` plus the
/// integral bracketing of the tail:
/// `(N+1)^(1-s)/(s-1) <= Σ_{n>N} n^-s <= N^(1-s)/(s-1)`.
pub fn zeta_interval(s: u32, terms: u64) -> Result<RationalInterval, ZetaError> {
    if s < 2 {
        return Err(ZetaError::Parameter {
            name: "s",
            value: s as u64,
            reason: "ζ(s) diverges for s < 2 at integers",
        });
    }
    if terms < 2 {
        return Err(ZetaError::Parameter {
            name: "terms",
            value: terms,
            reason: "must be >= 2",
        });
    }
    let partial = zeta_partial_sum(s, terms);
    let tail = |n: u64| BigRational::new(BigInt::one(), BigInt::from(s - 1) * rational::pow_u64(n, s - 1));
    let lo = rational::add(&partial, &tail(terms + 1));
    let hi = rational::add(&partial, &tail(terms));
    Ok(Interval::new(lo, hi).expect("tail bracket is ordered"))
}

/// Smallest `terms` whose enclosure width is below `width` (for `s >= 2`).
pub fn terms_for_width(s: u32, width: &BigRational) -> u64 {
    // width(N) = (N^(1-s) - (N+1)^(1-s))/(s-1) < N^-s; double then bisect.
    let w = |n: u64| {
        let a = BigRational::new(BigInt::one(), rational::pow_u64(n, s - 1));
        let b = BigRational::new(BigInt::one(), rational::pow_u64(n + 1, s - 1));
        (a - b) / rational::from_u64(s as u64 - 1)
    };
    let mut hi = 2u64;
    while &w(hi) >= width {
        hi *= 2;
    }
    let mut lo = hi / 2;
    while lo + 1 < hi {
        let mid = (lo + hi) / 2;
        if &w(mid) < width {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi.max(2)
}

/// Target of the χ mod 4 product: `L(1,χ)^3 / L(3,χ)` from the π-coefficients
/// `L(1,χ) = π/4` and `L(3,χ) = π^3/32`.
pub fn l_chi4_target() -> ReducedFraction {
    let l1 = rational::ratio(1, 4);
    let l3 = rational::ratio(1, 32);
    rational::div(&l1.pow(3), &l3)
}
