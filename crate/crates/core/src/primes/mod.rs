//! Prime tables, prime counting, primality, factorization and 2-adic
//! valuations.

mod factor;
mod primality;
mod sieve;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

pub use factor::{factorize, Effort, Factorization, Factorizer, PrimeFactor};
pub use primality::{is_prime_u64, primality, Primality, PROBABLE_PRIME_ROUNDS};

/// Largest sieve limit accepted unless the caller raises it.
pub const DEFAULT_MAX_LIMIT: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimesError {
    #[error("prime table limit {limit} outside [2, {max}]")]
    Capacity { limit: u64, max: u64 },
    #[error("x = {x} exceeds prime table limit {limit}")]
    Coverage { x: u64, limit: u64 },
    #[error("x = {0} is not a finite non-negative number")]
    InvalidX(String),
}

/// All primes up to `limit`, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Sieve with the default capacity cap.
    pub fn new(limit: u64) -> Result<Self, PrimesError> {
        Self::with_max(limit, DEFAULT_MAX_LIMIT)
    }

    pub fn with_max(limit: u64, max: u64) -> Result<Self, PrimesError> {
        if !(2..=max).contains(&limit) {
            return Err(PrimesError::Capacity { limit, max });
        }
        Ok(PrimeTable {
            limit,
            primes: sieve::segmented(limit),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Primes `<= x`.
    pub fn primes_up_to(&self, x: u64) -> Result<&[u64], PrimesError> {
        let n = self.prime_count(x)? as usize;
        Ok(&self.primes[..n])
    }

    /// π(x): the number of primes `<= x`.
    pub fn prime_count(&self, x: u64) -> Result<u64, PrimesError> {
        if x > self.limit {
            return Err(PrimesError::Coverage { x, limit: self.limit });
        }
        Ok(self.primes.partition_point(|&p| p <= x) as u64)
    }

    /// π(x) for real `x`, i.e. π(⌊x⌋).
    pub fn prime_count_real(&self, x: f64) -> Result<u64, PrimesError> {
        if !x.is_finite() || x < 0.0 {
            return Err(PrimesError::InvalidX(x.to_string()));
        }
        let floor = x.floor();
        if floor > self.limit as f64 {
            return Err(PrimesError::Coverage {
                x: floor as u64,
                limit: self.limit,
            });
        }
        self.prime_count(floor as u64)
    }

    /// The `k`-th prime, 1-based.
    pub fn nth_prime(&self, k: usize) -> Option<u64> {
        k.checked_sub(1).and_then(|i| self.primes.get(i).copied())
    }

    pub fn contains(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

/// Convenience wrapper for [`PrimeTable::new`].
pub fn build_prime_table(limit: u64) -> Result<PrimeTable, PrimesError> {
    PrimeTable::new(limit)
}

/// Largest `k` with `2^k | n`. Panics on zero.
pub fn two_adic_valuation(n: &BigUint) -> u64 {
    assert!(!n.is_zero(), "2-adic valuation of zero is undefined");
    n.trailing_zeros().expect("non-zero")
}

/// 2-adic valuation of a non-zero signed integer.
pub fn two_adic_valuation_signed(n: &BigInt) -> u64 {
    two_adic_valuation(n.magnitude())
}
