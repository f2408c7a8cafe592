//! Integer factorization: trial division, then Brent's variant of Pollard rho.
//!
//! Results are never silently wrong. When the budget runs out the composite
//! cofactors are kept in [`Factorization::unfactored`] and `complete` is
//! false; the product of everything listed always equals `n`.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::primality::{mul_mod, primality, Primality};
use super::PrimeTable;
use crate::serial;

/// Factoring budget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Effort {
    /// Trial-divide by every prime up to this bound.
    pub trial_bound: u64,
    /// Iterations per rho attempt.
    pub rho_iterations: u64,
    /// Rho attempts (distinct polynomial constants) per cofactor.
    pub rho_attempts: u32,
    /// Wall-clock cap for one `factorize` call.
    pub time_cap: Duration,
}

impl Default for Effort {
    fn default() -> Self {
        Effort {
            trial_bound: 1_000_000,
            rho_iterations: 1 << 24,
            rho_attempts: 24,
            time_cap: Duration::from_secs(120),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeFactor {
    #[serde(with = "serial::biguint")]
    pub prime: BigUint,
    pub exponent: u32,
    pub status: Primality,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    #[serde(with = "serial::biguint")]
    pub n: BigUint,
    /// Prime factors, strictly increasing.
    pub factors: Vec<PrimeFactor>,
    /// Cofactors left unsplit: composites that outlasted the budget, or
    /// pieces a caller chose not to examine.
    #[serde(with = "serial::biguint_vec")]
    pub unfactored: Vec<BigUint>,
    pub complete: bool,
    /// Complete and every prime proven (not merely probable).
    pub certified: bool,
}

impl Factorization {
    /// Product of all listed pieces; equals `n` by construction.
    pub fn reassemble(&self) -> BigUint {
        let mut acc = BigUint::one();
        for f in &self.factors {
            acc *= f.prime.pow(f.exponent);
        }
        for c in &self.unfactored {
            acc *= c;
        }
        acc
    }

    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.factors.last().map(|f| &f.prime)
    }

    pub fn smallest_prime(&self) -> Option<&BigUint> {
        self.factors.first().map(|f| &f.prime)
    }

    pub(crate) fn from_parts(n: BigUint, mut primes: Vec<(BigUint, Primality)>, unfactored: Vec<BigUint>) -> Self {
        primes.sort_by(|a, b| a.0.cmp(&b.0));
        let mut factors: Vec<PrimeFactor> = Vec::new();
        for (p, status) in primes {
            match factors.last_mut() {
                Some(last) if last.prime == p => last.exponent += 1,
                _ => factors.push(PrimeFactor {
                    prime: p,
                    exponent: 1,
                    status,
                }),
            }
        }
        let complete = unfactored.is_empty();
        let certified = complete && factors.iter().all(|f| f.status == Primality::Certified);
        Factorization {
            n,
            factors,
            unfactored,
            complete,
            certified,
        }
    }
}

/// Factorization engine holding the trial-division primes.
pub struct Factorizer {
    effort: Effort,
    small: PrimeTable,
}

impl Factorizer {
    pub fn new(effort: Effort) -> Self {
        let bound = effort.trial_bound.clamp(2, super::DEFAULT_MAX_LIMIT);
        let small = PrimeTable::new(bound).expect("bound clamped into range");
        Factorizer { effort, small }
    }

    pub fn effort(&self) -> &Effort {
        &self.effort
    }

    pub fn factorize(&self, n: &BigUint) -> Factorization {
        assert!(!n.is_zero(), "cannot factor zero");
        let start = Instant::now();
        let mut found: Vec<(BigUint, Primality)> = Vec::new();
        let mut rest = n.clone();

        for &p in self.small.primes() {
            if rest.is_one() {
                break;
            }
            if let Some(r) = rest.to_u64() {
                if p.saturating_mul(p) > r {
                    break;
                }
            }
            while (&rest % p).is_zero() {
                rest /= p;
                found.push((BigUint::from(p), Primality::Certified));
            }
        }

        let mut unfactored = Vec::new();
        let mut stack = Vec::new();
        if !rest.is_one() {
            stack.push(rest);
        }
        while let Some(m) = stack.pop() {
            match primality(&m) {
                Primality::Composite => {}
                status => {
                    found.push((m, status));
                    continue;
                }
            }
            let deadline_hit = start.elapsed() >= self.effort.time_cap;
            let split = if deadline_hit { None } else { self.split(&m, start) };
            match split {
                Some(d) => {
                    let other = &m / &d;
                    stack.push(d);
                    stack.push(other);
                }
                None => unfactored.push(m),
            }
        }
        unfactored.sort();
        Factorization::from_parts(n.clone(), found, unfactored)
    }

    /// A non-trivial divisor of composite `m`, if rho finds one in budget.
    fn split(&self, m: &BigUint, start: Instant) -> Option<BigUint> {
        if let Some(r) = perfect_power_root(m) {
            return Some(r);
        }
        for c in 1..=self.effort.rho_attempts as u64 {
            if start.elapsed() >= self.effort.time_cap {
                return None;
            }
            let d = match m.to_u64() {
                Some(v) => rho_u64(v, c, self.effort.rho_iterations).map(BigUint::from),
                None => rho_big(m, c, self.effort.rho_iterations),
            };
            if let Some(d) = d {
                return Some(d);
            }
        }
        None
    }
}

/// Factor with a freshly built [`Factorizer`].
pub fn factorize(n: &BigUint, effort: &Effort) -> Factorization {
    Factorizer::new(effort.clone()).factorize(n)
}

fn perfect_power_root(m: &BigUint) -> Option<BigUint> {
    for k in 2..=m.bits() as u32 {
        let r = m.nth_root(k);
        if r <= BigUint::one() {
            break;
        }
        if r.pow(k) == *m {
            return Some(r);
        }
    }
    None
}

const BATCH: u64 = 128;

fn rho_u64(n: u64, c: u64, max_iter: u64) -> Option<u64> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let f = |x: u64| ((x as u128 * x as u128 + c as u128) % n as u128) as u64;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut iters = 0u64;
    let mut x;
    let mut ys;
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        loop {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            let g = q.gcd(&n);
            k += BATCH;
            iters += BATCH;
            if g != 1 {
                if g != n {
                    return Some(g);
                }
                // batch overshot; step back one at a time
                loop {
                    ys = f(ys);
                    let g = x.abs_diff(ys).gcd(&n);
                    if g != 1 {
                        return (g != n).then_some(g);
                    }
                }
            }
            if k >= r || iters >= max_iter {
                break;
            }
        }
        if iters >= max_iter {
            return None;
        }
        r *= 2;
    }
}

fn rho_big(n: &BigUint, c: u64, max_iter: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut iters = 0u64;
    loop {
        let x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        loop {
            let mut ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            let g = q.gcd(n);
            k += BATCH;
            iters += BATCH;
            if !g.is_one() {
                if &g != n {
                    return Some(g);
                }
                loop {
                    ys = f(&ys);
                    let g = diff(&x, &ys).gcd(n);
                    if !g.is_one() {
                        return (&g != n).then_some(g);
                    }
                }
            }
            if k >= r || iters >= max_iter {
                break;
            }
        }
        if iters >= max_iter {
            return None;
        }
        r *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_effort() -> Effort {
        Effort {
            trial_bound: 1000,
            ..Effort::default()
        }
    }

    fn pairs(f: &Factorization) -> Vec<(u64, u32)> {
        f.factors
            .iter()
            .map(|p| (p.prime.to_u64().unwrap(), p.exponent))
            .collect()
    }

    #[test]
    fn spec_examples() {
        let fz = Factorizer::new(Effort::default());
        assert_eq!(pairs(&fz.factorize(&BigUint::from(721u32))), vec![(7, 1), (103, 1)]);
        let one = fz.factorize(&BigUint::one());
        assert!(one.factors.is_empty() && one.complete && one.certified);
        assert_eq!(pairs(&fz.factorize(&BigUint::from(40_321u32))), vec![(61, 1), (661, 1)]);
    }

    #[test]
    fn rho_splits_beyond_trial_bound() {
        // 20!+1 = 20639383 · 117876683047
        let n = BigUint::from(2_432_902_008_176_640_001u64);
        let f = Factorizer::new(small_effort()).factorize(&n);
        assert!(f.certified);
        assert_eq!(pairs(&f), vec![(20_639_383, 1), (117_876_683_047, 1)]);
    }

    #[test]
    fn wide_semiprime_uses_big_rho() {
        let p = BigUint::from(1_000_000_007u64);
        let q = BigUint::from(2_305_843_009_213_693_951u64); // 2^61 - 1
        let n = &p * &q;
        let f = Factorizer::new(small_effort()).factorize(&n);
        assert!(f.complete && f.certified);
        assert_eq!(f.factors[0].prime, p);
        assert_eq!(f.factors[1].prime, q);
    }

    #[test]
    fn perfect_powers_and_repeated_factors() {
        let n = BigUint::from(1_000_003u64).pow(3) * 8u32;
        let f = Factorizer::new(small_effort()).factorize(&n);
        assert_eq!(pairs(&f), vec![(2, 3), (1_000_003, 3)]);
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let effort = Effort {
            trial_bound: 100,
            rho_iterations: 1,
            rho_attempts: 1,
            time_cap: Duration::from_secs(5),
        };
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64) * 6u32;
        let f = Factorizer::new(effort).factorize(&n);
        assert_eq!(f.reassemble(), n);
        assert!(!f.complete && !f.certified);
        assert_eq!(f.unfactored.len(), 1);
        assert_eq!(pairs(&f), vec![(2, 1), (3, 1)]);
    }

    #[test]
    fn reassembles_and_certifies_below_1e5() {
        let fz = Factorizer::new(small_effort());
        for n in 1..=100_000u64 {
            let f = fz.factorize(&BigUint::from(n));
            assert_eq!(f.reassemble(), BigUint::from(n));
            assert!(f.certified, "{n}");
            for w in f.factors.windows(2) {
                assert!(w[0].prime < w[1].prime);
            }
            for p in &f.factors {
                let v = p.prime.to_u64().unwrap();
                assert!((2..).take_while(|d| d * d <= v).all(|d| v % d != 0));
            }
        }
    }
}
