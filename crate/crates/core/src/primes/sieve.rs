//! Segmented sieve of Eratosthenes over odd numbers.

const SEGMENT_ODDS: u64 = 1 << 18;

fn simple_odd_sieve(limit: u64) -> Vec<u64> {
    let mut out = vec![2];
    if limit < 3 {
        return out;
    }
    // index i represents 2i+1
    let n = ((limit - 1) / 2 + 1) as usize;
    let mut composite = vec![false; n];
    let mut i = 1usize;
    while (2 * i + 1) * (2 * i + 1) <= limit as usize {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j < n {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    out.extend((1..n).filter(|&i| !composite[i]).map(|i| 2 * i as u64 + 1));
    out
}

/// All primes `<= limit` (`limit >= 2`).
pub(super) fn segmented(limit: u64) -> Vec<u64> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = simple_odd_sieve(root.min(limit));
    if root >= limit {
        return base;
    }

    let mut primes = Vec::with_capacity(estimate_count(limit));
    primes.push(2);
    let odd_base: Vec<u64> = base[1..].to_vec();
    let mut composite = vec![false; SEGMENT_ODDS as usize];

    // Segment covers odd numbers low, low+2, ..., low + 2(SEGMENT_ODDS-1).
    let mut low = 3u64;
    while low <= limit {
        let high = (low + 2 * (SEGMENT_ODDS - 1)).min(limit | 1);
        let len = ((high - low) / 2 + 1) as usize;
        composite[..len].iter_mut().for_each(|c| *c = false);
        for &p in &odd_base {
            if p * p > high {
                break;
            }
            let mut start = (p * p).max(low.div_ceil(p) * p);
            if start % 2 == 0 {
                start += p;
            }
            let mut j = ((start - low) / 2) as usize;
            while j < len {
                composite[j] = true;
                j += p as usize;
            }
        }
        for (j, &c) in composite[..len].iter().enumerate() {
            let n = low + 2 * j as u64;
            if !c && n <= limit {
                primes.push(n);
            }
        }
        low = high + 2;
    }
    primes
}

fn estimate_count(limit: u64) -> usize {
    let x = limit as f64;
    (1.3 * x / x.ln().max(1.0)) as usize + 16
}
