//! Euclidean and Hermite prime sequences, and the prime harmonic sum.
//!
//! Euclid: `q_n = max{p | n!+1}`. Hermite: for the k-th prime `p`, the least
//! prime factor of `(p-1)!+1`, which Wilson's theorem pins to `p` itself.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::Interval;
use crate::logarithm::{self, DEFAULT_BITS};
use crate::primes::{self, Effort, Factorization, Factorizer, Primality, PrimeTable, PrimesError};
use crate::rational;
use crate::serial::{self, Quantity};

pub const DEFAULT_EUCLID_CAP: u64 = 25;
pub const DEFAULT_HERMITE_CAP: u64 = 2000;

/// A published list of largest prime factors of `n!+1`, `n = 1, 2, ...`,
/// kept verbatim so every computed term can be diffed against it.
pub const PUBLISHED_EUCLID: [u64; 15] = [2, 3, 7, 5, 11, 103, 71, 61, 661, 19, 269, 329891, 39916801, 13, 83];

/// Published Hermite list.
pub const PUBLISHED_HERMITE: [u64; 14] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SequenceError {
    #[error("invalid {name}: {reason}")]
    Parameter { name: &'static str, reason: String },
    #[error("index {index} exceeds the configured cap {cap}")]
    Cap { index: u64, cap: u64 },
    #[error(transparent)]
    Primes(#[from] PrimesError),
    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SequenceKind {
    Euclid,
    Hermite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ListMatch {
    Match,
    Mismatch,
    NotListed,
}

impl ListMatch {
    fn compare(listed: Option<u64>, extracted: &BigUint) -> Self {
        match listed {
            None => ListMatch::NotListed,
            Some(v) if BigUint::from(v) == *extracted => ListMatch::Match,
            Some(_) => ListMatch::Mismatch,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTerm {
    pub kind: SequenceKind,
    pub index: u64,
    /// `n!+1` or `(p-1)!+1`.
    #[serde(with = "serial::biguint")]
    pub source: BigUint,
    pub source_digits: usize,
    pub factorization: Factorization,
    #[serde(with = "serial::biguint")]
    pub extracted: BigUint,
    pub complete: bool,
    /// `extracted` is proven to be the requested extreme prime factor.
    pub extracted_proven: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub listed_value: Option<u64>,
    pub list_match: ListMatch,
}

fn digits(n: &BigUint) -> usize {
    n.to_str_radix(10).len()
}

/// Euclid terms, factoring `n!+1` within a fixed effort.
pub struct Euclid {
    factorizer: Factorizer,
    cap: u64,
}

impl Euclid {
    pub fn new(effort: Effort, cap: u64) -> Self {
        Euclid {
            factorizer: Factorizer::new(effort),
            cap,
        }
    }

    pub fn cap(&self) -> u64 {
        self.cap
    }

    pub fn term(&self, n: u64) -> Result<SequenceTerm, SequenceError> {
        if n == 0 {
            return Err(SequenceError::Parameter {
                name: "n",
                reason: "must be >= 1".into(),
            });
        }
        if n > self.cap {
            return Err(SequenceError::Cap { index: n, cap: self.cap });
        }
        let source: BigUint = (1..=n).map(BigUint::from).product::<BigUint>() + 1u32;
        let factorization = self.factorizer.factorize(&source);
        // incomplete: the largest prime found so far, or the source itself as a placeholder
        let extracted = factorization
            .largest_prime()
            .cloned()
            .unwrap_or_else(|| source.clone());
        let largest_is_max = factorization.complete;
        let proven = largest_is_max && factorization.certified;
        let listed_value = PUBLISHED_EUCLID.get(n as usize - 1).copied();
        Ok(SequenceTerm {
            kind: SequenceKind::Euclid,
            index: n,
            source_digits: digits(&source),
            source,
            complete: factorization.complete,
            extracted_proven: proven,
            list_match: ListMatch::compare(listed_value, &extracted),
            listed_value,
            extracted,
            factorization,
        })
    }
}

/// Hermite terms from the Wilson shortcut; the factorial is never factored.
pub struct Hermite<'a> {
    table: &'a PrimeTable,
    cap: u64,
}

impl<'a> Hermite<'a> {
    pub fn new(table: &'a PrimeTable, cap: u64) -> Self {
        Hermite { table, cap }
    }

    /// Largest admissible `k`, `π(cap)`.
    pub fn max_index(&self) -> Result<u64, SequenceError> {
        Ok(self.table.prime_count(self.cap)?)
    }

    pub fn term(&self, k: u64) -> Result<SequenceTerm, SequenceError> {
        let p = self.prime(k)?;
        let fact: BigUint = (1..p).map(BigUint::from).product();
        hermite_from_factorial(k, p, fact)
    }

    /// Terms `1..=count`, sharing one running factorial.
    pub fn terms(&self, count: u64) -> Result<Vec<SequenceTerm>, SequenceError> {
        if count > 0 {
            self.prime(count)?;
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut fact = BigUint::one();
        let mut upto = 1u64;
        for k in 1..=count {
            let p = self.prime(k)?;
            while upto < p - 1 {
                upto += 1;
                fact *= upto;
            }
            out.push(hermite_from_factorial(k, p, fact.clone())?);
        }
        Ok(out)
    }

    fn prime(&self, k: u64) -> Result<u64, SequenceError> {
        if k == 0 {
            return Err(SequenceError::Parameter {
                name: "k",
                reason: "must be >= 1".into(),
            });
        }
        let max = self.max_index()?;
        if k > max {
            return Err(SequenceError::Cap { index: k, cap: max });
        }
        self.table
            .nth_prime(k as usize)
            .ok_or_else(|| SequenceError::Internal(format!("prime table lacks p_{k}")))
    }
}

/// `(p-1)! ≡ -1 (mod p)` by a modular factorial.
pub fn wilson_holds(p: u64) -> bool {
    let m = p as u128;
    let mut acc: u128 = 1;
    for i in 2..p as u128 {
        acc = acc * i % m;
    }
    p >= 2 && (acc + 1).is_multiple_of(m)
}

fn hermite_from_factorial(k: u64, p: u64, factorial: BigUint) -> Result<SequenceTerm, SequenceError> {
    if !wilson_holds(p) {
        return Err(SequenceError::Internal(format!("Wilson congruence fails for p = {p}")));
    }
    let source = factorial + 1u32;
    let pb = BigUint::from(p);
    let mut cofactor = source.clone();
    let mut exponent = 0usize;
    while (&cofactor % &pb) == BigUint::default() {
        cofactor /= &pb;
        exponent += 1;
    }
    if exponent == 0 {
        return Err(SequenceError::Internal(format!("{p} does not divide ({p}-1)!+1")));
    }
    let mut found = vec![(pb.clone(), Primality::Certified); exponent];
    let mut rest = Vec::new();
    match cofactor.to_u64() {
        Some(1) => {}
        Some(c) if primes::is_prime_u64(c) => found.push((cofactor.clone(), Primality::Certified)),
        _ => rest.push(cofactor),
    }
    let factorization = Factorization::from_parts(source.clone(), found, rest);
    let listed_value = PUBLISHED_HERMITE.get(k as usize - 1).copied();
    Ok(SequenceTerm {
        kind: SequenceKind::Hermite,
        index: k,
        source_digits: digits(&source),
        source,
        complete: factorization.complete,
        extracted_proven: true,
        list_match: ListMatch::compare(listed_value, &pb),
        listed_value,
        extracted: pb,
        factorization,
    })
}

/// `Σ_{p<=x} 1/p` against `ln ln x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicSum {
    pub x: u64,
    pub pi_x: u64,
    #[serde(with = "crate::serial::fraction")]
    pub sum: BigRational,
    pub sum_approx: f64,
    pub log_log_x: Quantity,
    /// `sum - ln ln x`, reported only (tends to the Meissel–Mertens constant).
    pub drift: Quantity,
}

pub fn prime_harmonic_sum(table: &PrimeTable, x: u64) -> Result<HarmonicSum, SequenceError> {
    if x < 3 {
        return Err(SequenceError::Parameter {
            name: "x",
            reason: format!("{x}: needs x >= 3"),
        });
    }
    let ps = table.primes_up_to(x)?;
    let mut sum = rational::from_u64(0);
    for &p in ps {
        sum = rational::add(&sum, &BigRational::new(1.into(), p.into()));
    }
    let ln_x = logarithm::ln_u64(x, DEFAULT_BITS).expect("x >= 3");
    let log_log = logarithm::ln_interval(&ln_x, DEFAULT_BITS).expect("ln x > 1");
    let drift = Interval::point(sum.clone()).sub(&log_log);
    Ok(HarmonicSum {
        x,
        pi_x: ps.len() as u64,
        sum_approx: rational::to_f64(&sum),
        sum,
        log_log_x: Quantity::Enclosure(log_log).compacted(),
        drift: Quantity::Enclosure(drift).compacted(),
    })
}
