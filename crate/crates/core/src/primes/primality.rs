//! Miller–Rabin: deterministic below 2^64, seeded random bases above.

use num_bigint::{BigUint, RandBigInt};
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Rounds used for integers wider than 64 bits.
pub const PROBABLE_PRIME_ROUNDS: u32 = 48;

// This base set is a proven witness set for every n < 3.3·10^24.
const WITNESSES_64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const RNG_SEED: u64 = 0x5eed_2211_1337_0005;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Primality {
    Composite,
    /// Proven prime (deterministic test).
    Certified,
    /// Passed [`PROBABLE_PRIME_ROUNDS`] random-base rounds.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        self != Primality::Composite
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES_64 {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let r = (n - 1).trailing_zeros();
    'witness: for &a in &WITNESSES_64 {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint, d: &BigUint, r: u64) -> bool {
    let n_minus_1 = n - 1u32;
    let mut x = a.modpow(d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..r {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Classify `n`. Values below 2^64 are decided exactly.
pub fn primality(n: &BigUint) -> Primality {
    if let Some(v) = n.to_u64() {
        return if is_prime_u64(v) {
            Primality::Certified
        } else {
            Primality::Composite
        };
    }
    for &p in &WITNESSES_64 {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    let n_minus_1 = n - 1u32;
    let r = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> r as usize;
    for &a in &WITNESSES_64 {
        if !strong_probable_prime(n, &BigUint::from(a), &d, r) {
            return Primality::Composite;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED ^ n.bits());
    let two = BigUint::from(2u32);
    for _ in 0..PROBABLE_PRIME_ROUNDS {
        let a = rng.gen_biguint_range(&two, &n_minus_1);
        if !strong_probable_prime(n, &a, &d, r) {
            return Primality::Composite;
        }
    }
    Primality::ProbablePrime
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn agrees_with_trial_division_below_100k() {
        for n in 0..100_000u64 {
            let td = n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime_u64(n), td, "{n}");
        }
    }

    #[test]
    fn strong_pseudoprimes_are_rejected() {
        // strong pseudoprimes to several small bases
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime_u64(n), "{n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
    }

    #[test]
    fn wide_integers() {
        // 2^89 - 1 is a Mersenne prime; 2^67 - 1 is composite.
        let m89 = (BigUint::one() << 89usize) - 1u32;
        assert_eq!(primality(&m89), Primality::ProbablePrime);
        let m67 = (BigUint::one() << 67usize) - 1u32;
        assert_eq!(primality(&m67), Primality::Composite);
        let carmichael_like = BigUint::from(765_041_185_860_961_084_291u128) * 3u32;
        assert_eq!(primality(&carmichael_like), Primality::Composite);
    }
}
