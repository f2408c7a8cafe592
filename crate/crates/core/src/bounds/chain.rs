use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::{Interval, Verdict};
use crate::logarithm::{self, DEFAULT_BITS};
use crate::primes::PrimeTable;
use crate::products::{self, GrowthVerdict, ProductRecord};
use crate::rational;
use crate::serial::Quantity;
use crate::zeta;
use crate::RationalInterval;

use super::diff::{verify_diff_euler_with, verify_diff_ratio_with, LinkVerdict, ZETA_BITS};
use super::lower::PiBoundModel;
use super::measure::log2_measure_gap;
use super::{euler_tail_bound, parameter, ratio_tail_bound, BoundsError, IrrationalityParams};

/// The ratio chain has no free `s`; its offset constant is bound to 1.
pub const RATIO_CHAIN_OFFSET_S: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chain {
    Euler,
    Ratio,
}

impl Chain {
    pub fn as_str(self) -> &'static str {
        match self {
            Chain::Euler => "euler",
            Chain::Ratio => "ratio",
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Chain {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "euler" => Ok(Chain::Euler),
            "ratio" => Ok(Chain::Ratio),
            other => Err(parameter("chain", format!("unknown chain {other:?} (euler|ratio)"))),
        }
    }
}

/// Everything a chain verification depends on besides `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSettings {
    pub chain: Chain,
    /// Ignored by the ratio chain, which uses [`RATIO_CHAIN_OFFSET_S`].
    pub s: u32,
    pub params: IrrationalityParams,
    /// Terms of the ζ(s) partial sum.
    pub terms: u64,
    pub c4: BigRational,
    /// Inflation of the ratio tail's leading term.
    pub safety: BigRational,
    /// Below `x0` a failing π bound is recorded but not required.
    pub x0: u64,
}

pub const DEFAULT_TERMS: u64 = 10_000;
pub const DEFAULT_X0: u64 = 100;

impl ChainSettings {
    pub fn euler(s: u32) -> Self {
        ChainSettings {
            chain: Chain::Euler,
            s,
            params: IrrationalityParams::irrational_default(),
            terms: DEFAULT_TERMS,
            c4: rational::from_u64(1),
            safety: rational::from_u64(2),
            x0: DEFAULT_X0,
        }
    }

    pub fn ratio() -> Self {
        ChainSettings {
            chain: Chain::Ratio,
            s: RATIO_CHAIN_OFFSET_S,
            params: IrrationalityParams::rational_default(),
            ..Self::euler(2)
        }
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        match self.chain {
            Chain::Euler if self.s < 2 => return Err(parameter("s", "the Euler chain needs s >= 2")),
            Chain::Ratio if self.params.mu() != &rational::from_u64(1) => {
                return Err(parameter("mu", "the ratio chain targets the rational 2/5, so mu must be 1"))
            }
            _ => {}
        }
        if self.terms < 2 {
            return Err(parameter("terms", "must be >= 2"));
        }
        if !self.c4.is_positive() {
            return Err(parameter("c4", "must be > 0"));
        }
        if self.safety < rational::from_u64(1) {
            return Err(parameter("safety", "must be >= 1"));
        }
        Ok(())
    }

    /// The `s` that actually enters the formulas.
    pub fn effective_s(&self) -> u32 {
        match self.chain {
            Chain::Euler => self.s,
            Chain::Ratio => RATIO_CHAIN_OFFSET_S,
        }
    }
}

/// Verdicts for every link of one chain at one `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub chain: Chain,
    pub s: u32,
    pub x: u64,
    pub params: IrrationalityParams,
    #[serde(with = "crate::serial::fraction")]
    pub c4: BigRational,
    pub pi_x: u64,
    pub links: Vec<LinkVerdict>,
    pub growth: GrowthVerdict,
    /// Enclosure of `c1·ln x + c0`.
    pub final_bound: Quantity,
    pub c1: Quantity,
    pub c0: Quantity,
    /// `π(x) >= final_bound` decided from enclosures.
    pub theorem_holds: Verdict,
    /// `x >= x0`, so the π bound is a required link.
    pub above_x0: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_c4: Option<Quantity>,
    /// No required link failed or stayed undecided.
    pub passed: bool,
}

impl BoundReport {
    pub fn link(&self, name: &str) -> Option<&LinkVerdict> {
        self.links.iter().find(|l| l.name == name)
    }

    pub fn blocking(&self) -> impl Iterator<Item = &LinkVerdict> {
        self.links.iter().filter(|l| l.is_blocking())
    }

    /// Links that failed or were undecided, required or not.
    pub fn unsettled(&self) -> impl Iterator<Item = &LinkVerdict> {
        self.links.iter().filter(|l| !l.verdict.holds())
    }

    pub const CSV_HEADER: &'static str = "x,pi_x,bound,slack,holds";

    /// `x,pi_x,bound,slack,holds` with floats for plotting.
    pub fn csv_row(&self) -> String {
        let slack = self.link("pi_bound").map_or(f64::NAN, |l| l.slack_approx);
        format!(
            "{},{},{},{},{}",
            self.x,
            self.pi_x,
            self.final_bound.approx(),
            slack,
            self.theorem_holds.holds()
        )
    }
}

/// Per-settings state shared across many `x`: the ζ(s) enclosure and the
/// π bound constants.
#[derive(Clone, Debug)]
pub struct ChainContext {
    settings: ChainSettings,
    zeta: Option<RationalInterval>,
    model: PiBoundModel,
}

impl ChainContext {
    pub fn new(settings: ChainSettings) -> Result<Self, BoundsError> {
        settings.validate()?;
        let s = settings.effective_s();
        let (zeta, model) = match settings.chain {
            Chain::Euler => {
                let z = zeta::zeta_interval(s, settings.terms)?.round_outward(ZETA_BITS);
                let model = PiBoundModel::euler(s, &settings.params, &z)?;
                (Some(z), model)
            }
            Chain::Ratio => (None, PiBoundModel::ratio(s, &settings.params, &settings.c4)?),
        };
        Ok(ChainContext { settings, zeta, model })
    }

    pub fn settings(&self) -> &ChainSettings {
        &self.settings
    }

    pub fn model(&self) -> &PiBoundModel {
        &self.model
    }

    pub fn zeta(&self) -> Option<&RationalInterval> {
        self.zeta.as_ref()
    }

    /// The partial product this chain is built on.
    pub fn record(&self, table: &PrimeTable, x: u64) -> Result<ProductRecord, BoundsError> {
        let s = self.settings.effective_s();
        Ok(match self.settings.chain {
            Chain::Euler => products::euler_partial(table, s, x)?,
            Chain::Ratio => products::ratio_partial(table, s, x)?,
        })
    }

    pub fn verify(&self, table: &PrimeTable, x: u64) -> Result<BoundReport, BoundsError> {
        let record = self.record(table, x)?;
        self.verify_record(&record)
    }

    /// Evaluates every link for an already built partial product.
    pub fn verify_record(&self, record: &ProductRecord) -> Result<BoundReport, BoundsError> {
        let cfg = &self.settings;
        let s = cfg.effective_s();
        let x = record.x;
        if x < 2 {
            return Err(parameter("x", "must be >= 2"));
        }
        let expected_kind = match cfg.chain {
            Chain::Euler => products::ProductKind::Euler,
            Chain::Ratio => products::ProductKind::Ratio,
        };
        if record.kind != expected_kind || record.s != s {
            return Err(products::ProductError::KindMismatch {
                expected: expected_kind,
                found: record.kind,
            }
            .into());
        }
        let pi = record.pi_x;
        let exponent = cfg.params.exponent();
        let growth_exp = pi as i64 - s as i64 - 1;
        let mut links = Vec::with_capacity(6);

        // L1: growth of the numerator and the 2-adic structure
        let growth = products::growth_check(record)?;
        let p_bits = record.numerator().bits() as i64 - 1;
        let mut l1 = LinkVerdict::exact(
            "growth",
            rational::from_i64(growth_exp),
            rational::from_i64(p_bits),
            true,
        );
        l1.verdict = if growth.holds() { Verdict::Holds } else { Verdict::Fails };
        links.push(l1.with_note(format!(
            "a_divisibility={} b_exact_power={} numerator_growth={} ordering={}",
            growth.a_divisibility, growth.b_exact_power, growth.numerator_growth, growth.ordering
        )));

        // L2: q_x^-(μ+ε) <= 2^-((π-s-1)(μ+ε)), compared as log2
        let q = record.denominator().magnitude().clone();
        let gap_log2 = log2_measure_gap(&q, &cfg.params)?;
        let target_log2 = rational::mul(&rational::from_i64(-growth_exp), &exponent);
        links.push(
            LinkVerdict::compare("measure_gap", gap_log2, Interval::point(target_log2.clone()), true)
                .with_note("log2 of q_x^-(mu+eps) vs log2 of 2^-((pi-s-1)(mu+eps))"),
        );

        // L3: difference from the limit
        let (diff_link, abs_diff, min_c4) = match cfg.chain {
            Chain::Euler => {
                let z = self.zeta.as_ref().expect("euler context has zeta");
                let link = verify_diff_euler_with(record, z)?;
                let abs = link.lhs.as_interval();
                (link, abs, None)
            }
            Chain::Ratio => {
                let d = verify_diff_ratio_with(record, &cfg.c4)?;
                let abs = d.link.lhs.as_interval();
                (d.link, abs, Some(d.min_c4))
            }
        };

        // L2b: 2^-((π-s-1)(μ+ε)) <= |diff|, the measure inequality itself
        let gap_vs_diff = match log2_of_positive(&abs_diff) {
            Some(l) => LinkVerdict::compare("gap_vs_difference", Interval::point(target_log2), l, false),
            None => {
                let mut l = LinkVerdict::compare(
                    "gap_vs_difference",
                    Interval::point(target_log2),
                    Interval::point(BigRational::zero()),
                    false,
                );
                l.verdict = Verdict::Indeterminate;
                l.with_note("|diff| enclosure reaches 0")
            }
        };
        links.push(gap_vs_diff.with_note("informational: log2 gap vs log2 |diff|"));
        links.push(diff_link);

        // L3t: tail of the product beyond x
        links.push(self.tail_link(record)?);

        // L4: π(x) >= c1·ln x + c0
        let bound = self.model.at(x);
        let above_x0 = x >= cfg.x0;
        let pi_link = LinkVerdict::compare(
            "pi_bound",
            bound.clone(),
            Interval::point(rational::from_u64(pi)),
            above_x0,
        );
        let theorem_holds = pi_link.verdict;
        links.push(if above_x0 {
            pi_link
        } else {
            pi_link.with_note(format!("x < x0 = {}: recorded, not required", cfg.x0))
        });

        let passed = links.iter().all(|l| !l.is_blocking());
        Ok(BoundReport {
            chain: cfg.chain,
            s,
            x,
            params: cfg.params.clone(),
            c4: cfg.c4.clone(),
            pi_x: pi,
            links,
            growth,
            final_bound: Quantity::Enclosure(bound).compacted(),
            c1: Quantity::Enclosure(self.model.c1().clone()).compacted(),
            c0: Quantity::Enclosure(self.model.c0().clone()).compacted(),
            theorem_holds,
            above_x0,
            min_c4,
            passed,
        })
    }

    fn tail_link(&self, record: &ProductRecord) -> Result<LinkVerdict, BoundsError> {
        let x = record.x;
        let s = record.s;
        let one = rational::from_u64(1);
        match self.settings.chain {
            Chain::Euler => {
                // ζ(s)·f_x - 1 = ∏_{p>x} (1 - p^-s)^-1 - 1
                let z = self.zeta.as_ref().expect("euler context has zeta");
                let lhs = z.scale(&record.fraction).add_scalar(&-one);
                let rhs: BigRational = euler_tail_bound(s, x)?;
                Ok(LinkVerdict::compare("tail", lhs, Interval::point(rhs), true))
            }
            Chain::Ratio => {
                // f_x / limit - 1 = ∏_{p>x} ((p^2s-1)/(p^2s+1))^-1 - 1
                let ratio = zeta::zeta_ratio_exact(s as u64)?;
                let lhs = rational::mul(&record.fraction, &ratio) - one;
                let lead: BigRational = ratio_tail_bound(s, x)?;
                let plain = lhs <= lead;
                let rhs = rational::mul(&lead, &self.settings.safety);
                Ok(LinkVerdict::exact("tail", lhs, rhs, true).with_note(format!(
                    "safety factor {}; un-inflated bound {}",
                    self.settings.safety,
                    if plain { "also holds" } else { "fails" }
                )))
            }
        }
    }
}

fn log2_of_positive(v: &RationalInterval) -> Option<RationalInterval> {
    let r = v.round_outward(256);
    if !r.lo().is_positive() {
        return None;
    }
    let l = logarithm::ln_interval(&r, DEFAULT_BITS).ok()?;
    Some(l.div(&logarithm::ln2(DEFAULT_BITS)).expect("ln 2 > 0"))
}

/// One report for `settings` at `x`.
pub fn verify_chain(table: &PrimeTable, settings: &ChainSettings, x: u64) -> Result<BoundReport, BoundsError> {
    ChainContext::new(settings.clone())?.verify(table, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn table() -> PrimeTable {
        PrimeTable::new(20_000).unwrap()
    }

    #[test]
    fn euler_at_thousand_all_links_hold() {
        let r = verify_chain(&table(), &ChainSettings::euler(2), 1000).unwrap();
        assert_eq!(r.pi_x, 168);
        for l in &r.links {
            assert_eq!(l.verdict, Verdict::Holds, "{}", l.name);
        }
        assert!(r.passed);
        assert!(r.above_x0);
        assert_eq!(r.theorem_holds, Verdict::Holds);
        let names: Vec<&str> = r.links.iter().map(|l| l.name.as_str()).collect();
        assert_eq!(
            names,
            ["growth", "measure_gap", "gap_vs_difference", "difference", "tail", "pi_bound"]
        );
    }

    #[test]
    fn ratio_at_thousand_all_links_hold() {
        let r = verify_chain(&table(), &ChainSettings::ratio(), 1000).unwrap();
        for l in &r.links {
            assert_eq!(l.verdict, Verdict::Holds, "{}", l.name);
        }
        assert!(r.passed);
        assert_eq!(r.s, RATIO_CHAIN_OFFSET_S);
        let c4 = r.min_c4.as_ref().unwrap().approx();
        assert!(c4 > 0.0 && c4 <= 1.0);
        assert!(r.link("tail").unwrap().note.as_ref().unwrap().contains("also holds"));
    }

    #[test]
    fn small_x_failure_is_recorded_not_required() {
        let r = verify_chain(&table(), &ChainSettings::euler(2), 4).unwrap();
        let pi = r.link("pi_bound").unwrap();
        assert_eq!(pi.verdict, Verdict::Fails);
        assert!(!pi.required);
        assert!(!r.above_x0);
        assert!(r.passed);

        let mut strict = ChainSettings::euler(2);
        strict.x0 = 2;
        let r = verify_chain(&table(), &strict, 4).unwrap();
        assert!(!r.passed);
        assert_eq!(r.blocking().count(), 1);
    }

    #[test]
    fn settings_are_validated() {
        assert!(verify_chain(&table(), &ChainSettings::euler(1), 100).is_err());
        let mut bad = ChainSettings::ratio();
        bad.params = IrrationalityParams::irrational_default();
        assert!(verify_chain(&table(), &bad, 100).is_err());
        let mut bad = ChainSettings::euler(2);
        bad.c4 = ratio(0, 1);
        assert!(verify_chain(&table(), &bad, 100).is_err());
        assert!(verify_chain(&table(), &ChainSettings::euler(2), 1).is_err());
        assert!("zeta".parse::<Chain>().is_err());
        assert_eq!("ratio".parse::<Chain>().unwrap(), Chain::Ratio);
    }

    #[test]
    fn csv_projection() {
        let r = verify_chain(&table(), &ChainSettings::euler(2), 100).unwrap();
        let row = r.csv_row();
        assert!(row.starts_with("100,25,6.50"), "{row}");
        assert!(row.ends_with(",true"));
    }

    #[test]
    fn more_terms_never_flip_a_hold() {
        let t = table();
        for x in [10u64, 100, 1000] {
            let mut lo = ChainSettings::euler(4);
            lo.terms = 50;
            let mut hi = lo.clone();
            hi.terms = 5000;
            let a = verify_chain(&t, &lo, x).unwrap();
            let b = verify_chain(&t, &hi, x).unwrap();
            for (la, lb) in a.links.iter().zip(&b.links) {
                if la.verdict == Verdict::Holds {
                    assert_eq!(lb.verdict, Verdict::Holds, "x={x} {}", la.name);
                }
            }
        }
    }
}
