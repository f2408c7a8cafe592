use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::interval::{Interval, Verdict};
use crate::logarithm::{self, DEFAULT_BITS};
use crate::primes::PrimeTable;
use crate::rational;
use crate::serial::Quantity;
use crate::zeta;
use crate::RationalInterval;

use super::diff::ZETA_BITS;
use super::{parameter, BoundsError, IrrationalityParams};

/// `π(x) >= c1·ln x + c0` with enclosed constants.
///
/// Euler chain (ζ(s) irrational with measure μ):
/// `c1 = (s-1)/((μ+ε)·ln 2)`, `c0 = s + 1 + log2((s-1)·ζ(s))/(μ+ε)`.
///
/// Ratio chain (rational limit 2/5, offset `s = 1`):
/// `c1 = 1/((μ+ε)·ln 2)`, `c0 = s + 1 - log2(c4)/(μ+ε)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiBoundModel {
    c1: RationalInterval,
    c0: RationalInterval,
    bits: u32,
}

impl PiBoundModel {
    pub fn euler(s: u32, params: &IrrationalityParams, zeta_s: &RationalInterval) -> Result<Self, BoundsError> {
        if s < 2 {
            return Err(parameter("s", "the Euler chain needs s >= 2"));
        }
        let bits = DEFAULT_BITS;
        let e = Interval::point(params.exponent());
        let denom = logarithm::ln2(bits).mul(&e);
        let c1 = Interval::point(rational::from_u64(s as u64 - 1))
            .div(&denom)
            .expect("ln 2 > 0");
        let scaled = zeta_s.round_outward(ZETA_BITS).scale(&rational::from_u64(s as u64 - 1));
        let log_term = logarithm::ln_interval(&scaled, bits)
            .map_err(|_| parameter("zeta", "enclosure must be positive"))?
            .div(&denom)
            .expect("ln 2 > 0");
        let c0 = log_term.add_scalar(&rational::from_u64(s as u64 + 1));
        Ok(Self::from_constants(c1, c0, bits))
    }

    pub fn ratio(s: u32, params: &IrrationalityParams, c4: &BigRational) -> Result<Self, BoundsError> {
        if !c4.is_positive() {
            return Err(parameter("c4", format!("{c4} must be > 0")));
        }
        let bits = DEFAULT_BITS;
        let denom = logarithm::ln2(bits).mul(&Interval::point(params.exponent()));
        let c1 = Interval::point(rational::from_u64(1)).div(&denom).expect("ln 2 > 0");
        let log_c4 = logarithm::ln(c4, bits)
            .expect("c4 > 0")
            .div(&denom)
            .expect("ln 2 > 0");
        let c0 = log_c4.neg().add_scalar(&rational::from_u64(s as u64 + 1));
        Ok(Self::from_constants(c1, c0, bits))
    }

    fn from_constants(c1: RationalInterval, c0: RationalInterval, bits: u32) -> Self {
        PiBoundModel {
            c1: c1.round_outward(bits),
            c0: c0.round_outward(bits),
            bits,
        }
    }

    pub fn c1(&self) -> &RationalInterval {
        &self.c1
    }

    pub fn c0(&self) -> &RationalInterval {
        &self.c0
    }

    /// Enclosure of `c1·ln x + c0`.
    pub fn at(&self, x: u64) -> RationalInterval {
        let ln_x = logarithm::ln_u64(x.max(1), self.bits).expect("x >= 1");
        self.c1.mul(&ln_x).add(&self.c0)
    }

    pub fn approx(&self, x: u64) -> f64 {
        self.at(x).midpoint_f64()
    }

    /// Verdict of `bound(x) <= π(x)`.
    pub fn check(&self, x: u64, pi_x: u64) -> Verdict {
        self.at(x).le(&Interval::point(rational::from_u64(pi_x)))
    }
}

/// Lower bound for π(x) at a single point, with its constants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PiBound {
    pub x: u64,
    pub bound: Quantity,
    pub c1: Quantity,
    pub c0: Quantity,
}

impl PiBound {
    fn new(model: &PiBoundModel, x: u64) -> Self {
        PiBound {
            x,
            bound: Quantity::Enclosure(model.at(x)).compacted(),
            c1: Quantity::Enclosure(model.c1.clone()).compacted(),
            c0: Quantity::Enclosure(model.c0.clone()).compacted(),
        }
    }
}

pub fn pi_lower_bound_euler(
    s: u32,
    params: &IrrationalityParams,
    x: u64,
    terms: u64,
) -> Result<PiBound, BoundsError> {
    let z = zeta::zeta_interval(s, terms)?;
    Ok(PiBound::new(&PiBoundModel::euler(s, params, &z)?, x))
}

pub fn pi_lower_bound_ratio(params: &IrrationalityParams, x: u64, c4: &BigRational) -> Result<PiBound, BoundsError> {
    Ok(PiBound::new(&PiBoundModel::ratio(super::RATIO_CHAIN_OFFSET_S, params, c4)?, x))
}

/// Outcome of checking `bound(x) <= π(x)` for every integer in a range.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TheoremSweep {
    pub from: u64,
    pub to: u64,
    /// Least `x` in the range where the bound holds.
    pub first_hold: Option<u64>,
    /// Start of the final run of holding `x`; no violation at or above it.
    pub x0: Option<u64>,
    pub violations: Vec<u64>,
    /// Points where the enclosures were too wide to decide.
    pub indeterminate: Vec<u64>,
}

impl TheoremSweep {
    pub fn violations_from(&self, x: u64) -> usize {
        self.violations.iter().filter(|&&v| v >= x).count()
    }
}

/// Every integer `x` in `[from, to]`.
///
/// π is constant on `[p_k, p_(k+1) - 1]` and the bound increases in `x`, so
/// each such block is settled by its right end unless that end fails.
pub fn sweep_theorem(model: &PiBoundModel, table: &PrimeTable, from: u64, to: u64) -> Result<TheoremSweep, BoundsError> {
    let from = from.max(1);
    if to < from {
        return Err(parameter("x_range", format!("empty range {from}..{to}")));
    }
    table.prime_count(to)?;
    let primes = table.primes();
    let mut out = TheoremSweep {
        from,
        to,
        ..Default::default()
    };
    let mut last_bad: Option<u64> = None;
    let mut x = from;
    loop {
        let pi = table.prime_count(x)?;
        let end = match primes.get(pi as usize) {
            Some(&next) => (next - 1).min(to),
            None => to,
        };
        let block = if model.check(end, pi) == Verdict::Holds {
            vec![(x, Verdict::Holds)]
        } else {
            (x..=end).map(|y| (y, model.check(y, pi))).collect()
        };
        for (y, v) in block {
            match v {
                Verdict::Holds => {
                    out.first_hold.get_or_insert(y);
                }
                Verdict::Fails => {
                    out.violations.push(y);
                    last_bad = Some(y);
                }
                Verdict::Indeterminate => {
                    out.indeterminate.push(y);
                    last_bad = Some(y);
                }
            }
        }
        if end == to {
            break;
        }
        x = end + 1;
    }
    out.x0 = match last_bad {
        None => Some(from),
        Some(b) if b < to => Some(b + 1),
        Some(_) => None,
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_model() -> PiBoundModel {
        let z = zeta::zeta_interval(2, 10_000).unwrap();
        PiBoundModel::euler(2, &IrrationalityParams::irrational_default(), &z).unwrap()
    }

    fn ratio_model() -> PiBoundModel {
        PiBoundModel::ratio(1, &IrrationalityParams::rational_default(), &rational::from_u64(1)).unwrap()
    }

    /// Float transcription of the closed forms, for cross-checking.
    fn float_bound_euler(x: f64) -> f64 {
        let zeta2 = std::f64::consts::PI.powi(2) / 6.0;
        let e = 2.1;
        (1.0 / (e * std::f64::consts::LN_2)) * x.ln() + 3.0 + zeta2.log2() / e
    }

    #[test]
    fn euler_constants_match_floats() {
        let m = euler_model();
        assert!((m.c1().midpoint_f64() - 1.0 / (2.1 * std::f64::consts::LN_2)).abs() < 1e-12);
        for x in [10u64, 100, 1000, 1_000_000] {
            assert!((m.approx(x) - float_bound_euler(x as f64)).abs() < 1e-8, "x={x}");
        }
        // width is dominated by the ζ(2) enclosure from 10^4 terms
        assert!(m.at(100).width() < rational::ratio(1, 100_000_000));
    }

    #[test]
    fn ratio_constants_match_floats() {
        let m = ratio_model();
        let c = 1.0 / (1.1 * std::f64::consts::LN_2);
        assert!((m.c1().midpoint_f64() - c).abs() < 1e-12);
        assert!((m.c0().midpoint_f64() - 2.0).abs() < 1e-12);
        assert!((m.approx(100) - (c * 100f64.ln() + 2.0)).abs() < 1e-9);
    }

    #[test]
    fn sweep_agrees_with_pointwise_checks() {
        let table = PrimeTable::new(5000).unwrap();
        for m in [euler_model(), ratio_model()] {
            let sweep = sweep_theorem(&m, &table, 2, 5000).unwrap();
            let naive: Vec<u64> = (2..=5000)
                .filter(|&x| m.check(x, table.prime_count(x).unwrap()) != Verdict::Holds)
                .collect();
            let mut flagged = sweep.violations.clone();
            flagged.extend(&sweep.indeterminate);
            flagged.sort_unstable();
            assert_eq!(flagged, naive);
            assert_eq!(sweep.x0, Some(naive.last().map_or(2, |b| b + 1)));
        }
    }

    #[test]
    fn sweep_reports_empty_and_failing_ranges() {
        let table = PrimeTable::new(100).unwrap();
        let m = euler_model();
        let s = sweep_theorem(&m, &table, 2, 4).unwrap();
        assert_eq!(s.first_hold, None);
        assert_eq!(s.x0, None);
        assert!(sweep_theorem(&m, &table, 10, 5).is_err());
        assert!(sweep_theorem(&m, &table, 2, 1000).is_err());
    }
}
