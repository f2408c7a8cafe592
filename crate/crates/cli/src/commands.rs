use std::path::PathBuf;

use anyhow::Result;
use num_rational::BigRational;
use pibound::bounds::{self, BoundReport, Chain, ChainContext, ChainSettings, IrrationalityParams, TheoremSweep};
use pibound::primes::{Effort, PrimeTable};
use pibound::products::{self, GrowthVerdict, ProductKind, ProductRecord};
use pibound::sequences::{self, Euclid, HarmonicSum, Hermite, ListMatch, SequenceTerm};
use pibound::serial::{self, Quantity};
use pibound::{rational, zeta, Verdict};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{ChainArg, EffortArgs, Format, KindArg, ProductArgs, SequenceCommand, VerifyArgs, XArgs, ZetaCommand};
use crate::config::{invalid, Layers};
use crate::output::{abbreviate, emit, sink, Tabular};
use crate::xrange;

/// Whether any required check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Clean,
    RequiredFailure,
}

pub struct Ctx {
    pub layers: Layers,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub prime_limit: Option<u64>,
}

impl Ctx {
    fn table(&self, needed: u64) -> Result<PrimeTable> {
        let limit = self.prime_limit.unwrap_or(needed).max(2);
        if needed > limit {
            return Err(invalid("prime_limit", format!("{limit} is below the largest x needed ({needed})")));
        }
        PrimeTable::new(limit).map_err(|e| invalid("prime_limit", e.to_string()))
    }

    fn write<T: Serialize + Tabular>(&self, items: &[T]) -> Result<()> {
        let mut w = sink(self.out.as_deref())?;
        emit(&mut *w, self.format, items)
    }
}

fn warn(msg: impl AsRef<str>) {
    eprintln!("warning: {}", msg.as_ref());
}

fn resolve_xs(args: &XArgs) -> Result<Vec<u64>> {
    let xs = if !args.x.is_empty() {
        args.x.clone()
    } else if let Some(spec) = &args.x_range {
        xrange::parse(spec, "x_range")?
    } else {
        return Err(invalid("x", "give --x or --x-range"));
    };
    if let Some(bad) = xs.iter().find(|&&x| x == 0) {
        return Err(invalid("x", format!("{bad}: cutoffs must be >= 1")));
    }
    Ok(xs)
}

fn rational_option(layers: &Layers, cli: Option<String>, key: &str) -> Result<Option<BigRational>> {
    match layers.pick(cli, key)? {
        None => Ok(None),
        Some(text) => serial::parse_rational(&text)
            .map(Some)
            .ok_or_else(|| invalid(key, format!("{text:?} is not a rational number"))),
    }
}

// ---------------------------------------------------------------- product

#[derive(Serialize)]
struct ProductOut {
    #[serde(flatten)]
    record: ProductRecord,
    approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    growth: Option<GrowthVerdict>,
}

impl Tabular for ProductOut {
    fn columns() -> &'static [&'static str] {
        &["kind", "s", "x", "pi_x", "numerator", "denominator", "approx", "v2_a", "v2_b"]
    }

    fn cells(&self) -> Vec<String> {
        let r = &self.record;
        vec![
            r.kind.to_string(),
            r.s.to_string(),
            r.x.to_string(),
            r.pi_x.to_string(),
            r.numerator().to_string(),
            r.denominator().to_string(),
            self.approx.to_string(),
            r.v2_a.to_string(),
            r.v2_b.to_string(),
        ]
    }
}

pub fn product(ctx: &Ctx, args: ProductArgs) -> Result<Outcome> {
    let kind = match args.kind {
        KindArg::Euler => ProductKind::Euler,
        KindArg::Ratio => ProductKind::Ratio,
        KindArg::LChi4 => ProductKind::LChi4,
    };
    let s = if kind == ProductKind::LChi4 {
        if let Some(s) = args.s.filter(|&s| s != ProductKind::L_CHI4_EXPONENT) {
            return Err(invalid("s", format!("{s}: the l-chi4 product has fixed exponent 3")));
        }
        ProductKind::L_CHI4_EXPONENT
    } else {
        let default = if kind == ProductKind::Euler { 2 } else { 1 };
        let s = ctx.layers.pick(args.s, "s")?.unwrap_or(default);
        if s == 0 {
            return Err(invalid("s", "must be >= 1"));
        }
        s
    };
    let xs = resolve_xs(&args.xs)?;
    let table = ctx.table(*xs.iter().max().expect("non-empty"))?;
    let records = products::sweep(&table, kind, s, &xs)?;
    let out: Vec<ProductOut> = records
        .into_iter()
        .map(|record| {
            let growth = if args.growth && kind != ProductKind::LChi4 {
                Some(products::growth_check(&record)?)
            } else {
                None
            };
            Ok(ProductOut {
                approx: rational::to_f64(&record.fraction),
                record,
                growth,
            })
        })
        .collect::<Result<_>>()?;
    ctx.write(&out)?;
    let failed = out.iter().any(|o| o.growth.as_ref().is_some_and(|g| !g.holds()));
    Ok(if failed { Outcome::RequiredFailure } else { Outcome::Clean })
}

// ---------------------------------------------------------------- verify

impl Tabular for BoundReport {
    fn columns() -> &'static [&'static str] {
        &["x", "pi_x", "bound", "slack", "holds"]
    }

    fn cells(&self) -> Vec<String> {
        self.csv_row().split(',').map(str::to_string).collect()
    }
}

#[derive(Serialize)]
struct SweepOut {
    chain: Chain,
    s: u32,
    #[serde(flatten)]
    sweep: TheoremSweep,
    c1: Quantity,
    c0: Quantity,
    /// Where the caller required the bound to hold, if given.
    #[serde(skip_serializing_if = "Option::is_none")]
    required_from: Option<u64>,
    violations_from_x0: usize,
}

impl Tabular for SweepOut {
    fn columns() -> &'static [&'static str] {
        &["chain", "s", "from", "to", "first_hold", "x0", "violations", "violations_from_x0"]
    }

    fn cells(&self) -> Vec<String> {
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        vec![
            self.chain.to_string(),
            self.s.to_string(),
            self.sweep.from.to_string(),
            self.sweep.to.to_string(),
            opt(self.sweep.first_hold),
            opt(self.sweep.x0),
            self.sweep.violations.len().to_string(),
            self.violations_from_x0.to_string(),
        ]
    }
}

pub fn verify(ctx: &Ctx, args: VerifyArgs) -> Result<Outcome> {
    let layers = &ctx.layers;
    let chain = match args.chain {
        ChainArg::Euler => Chain::Euler,
        ChainArg::Ratio => Chain::Ratio,
    };
    let mut settings = match chain {
        Chain::Euler => ChainSettings::euler(layers.pick(args.s, "s")?.unwrap_or(2)),
        Chain::Ratio => {
            if let Some(s) = args.s.filter(|&s| s != bounds::RATIO_CHAIN_OFFSET_S) {
                warn(format!(
                    "--s {s} ignored: the ratio chain binds s = {}",
                    bounds::RATIO_CHAIN_OFFSET_S
                ));
            }
            ChainSettings::ratio()
        }
    };
    let mu = rational_option(layers, args.mu, "mu")?.unwrap_or_else(|| settings.params.mu().clone());
    let eps = rational_option(layers, args.eps, "eps")?.unwrap_or_else(|| settings.params.eps().clone());
    settings.params = IrrationalityParams::new(mu, eps)?;
    if let Some(c4) = rational_option(layers, args.c4, "c4")? {
        settings.c4 = c4;
    }
    if let Some(safety) = rational_option(layers, args.safety, "safety")? {
        settings.safety = safety;
    }
    if let Some(terms) = layers.pick(args.terms, "terms")? {
        settings.terms = terms;
    }
    let explicit_x0 = layers.pick(args.x0, "x0")?;
    if let Some(x0) = explicit_x0 {
        settings.x0 = x0;
    }
    settings.validate()?;

    if let Some(spec) = &args.sweep {
        let (from, to) = xrange::bounds(spec, "sweep")?;
        let table = ctx.table(to)?;
        let context = ChainContext::new(settings)?;
        return run_sweep(ctx, &context, &table, from, to, explicit_x0);
    }

    let xs = resolve_xs(&args.xs)?;
    if let Some(bad) = xs.iter().find(|&&x| x < 2) {
        return Err(invalid("x", format!("{bad}: chain verification needs x >= 2")));
    }
    let table = ctx.table(*xs.iter().max().expect("non-empty"))?;
    let context = ChainContext::new(settings)?;
    let s = context.settings().effective_s();
    let records = match chain {
        Chain::Euler => products::sweep(&table, ProductKind::Euler, s, &xs)?,
        Chain::Ratio => products::sweep(&table, ProductKind::Ratio, s, &xs)?,
    };
    let reports: Vec<BoundReport> = records
        .par_iter()
        .map(|r| context.verify_record(r))
        .collect::<Result<_, _>>()?;
    for r in &reports {
        for l in r.unsettled() {
            let tag = if l.required { "required" } else { "informational" };
            match l.verdict {
                Verdict::Indeterminate => warn(format!(
                    "{} x={}: {tag} link {} is indeterminate (try more --terms)",
                    r.chain, r.x, l.name
                )),
                _ if !l.required => warn(format!("{} x={}: {tag} link {} fails", r.chain, r.x, l.name)),
                _ => {}
            }
        }
    }
    ctx.write(&reports)?;
    let failed: Vec<u64> = reports.iter().filter(|r| !r.passed).map(|r| r.x).collect();
    if failed.is_empty() {
        Ok(Outcome::Clean)
    } else {
        eprintln!("required links failed at x = {failed:?}");
        Ok(Outcome::RequiredFailure)
    }
}

fn run_sweep(
    ctx: &Ctx,
    context: &ChainContext,
    table: &PrimeTable,
    from: u64,
    to: u64,
    required_from: Option<u64>,
) -> Result<Outcome> {
    let sweep = bounds::sweep_theorem(context.model(), table, from, to)?;
    let settings = context.settings();
    let violations_from_x0 = sweep.x0.map_or(sweep.violations.len(), |x0| sweep.violations_from(x0));
    let failed = match required_from {
        Some(x0) => sweep.violations_from(x0) > 0 || sweep.indeterminate.iter().any(|&x| x >= x0),
        None => sweep.x0.is_none(),
    };
    if !sweep.indeterminate.is_empty() {
        warn(format!("{} points undecided: {:?}", sweep.indeterminate.len(), sweep.indeterminate));
    }
    let out = SweepOut {
        chain: settings.chain,
        s: settings.effective_s(),
        c1: Quantity::Enclosure(context.model().c1().clone()).compacted(),
        c0: Quantity::Enclosure(context.model().c0().clone()).compacted(),
        required_from,
        violations_from_x0,
        sweep,
    };
    ctx.write(&[out])?;
    Ok(if failed { Outcome::RequiredFailure } else { Outcome::Clean })
}

// ---------------------------------------------------------------- zeta

#[derive(Serialize)]
struct ExactValue {
    quantity: &'static str,
    index: u64,
    #[serde(with = "pibound::serial::fraction")]
    value: BigRational,
    text: String,
    approx: f64,
}

impl ExactValue {
    fn new(quantity: &'static str, index: u64, value: BigRational) -> Self {
        ExactValue {
            quantity,
            index,
            text: serial::fraction_text(&value),
            approx: rational::to_f64(&value),
            value,
        }
    }
}

impl Tabular for ExactValue {
    fn columns() -> &'static [&'static str] {
        &["quantity", "index", "value", "approx"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.quantity.to_string(),
            self.index.to_string(),
            abbreviate(&self.text),
            self.approx.to_string(),
        ]
    }
}

#[derive(Serialize)]
struct ZetaEnclosure {
    s: u32,
    terms: u64,
    enclosure: Quantity,
    width_approx: f64,
}

impl Tabular for ZetaEnclosure {
    fn columns() -> &'static [&'static str] {
        &["s", "terms", "lo", "hi", "width"]
    }

    fn cells(&self) -> Vec<String> {
        let i = self.enclosure.as_interval().to_f64();
        vec![
            self.s.to_string(),
            self.terms.to_string(),
            format!("{:.17}", i.lo()),
            format!("{:.17}", i.hi()),
            format!("{:e}", self.width_approx),
        ]
    }
}

#[derive(Serialize)]
struct LChi4Out {
    x: u64,
    pi_x: u64,
    value: Quantity,
    #[serde(with = "pibound::serial::fraction")]
    target: BigRational,
    abs_error: f64,
}

impl Tabular for LChi4Out {
    fn columns() -> &'static [&'static str] {
        &["x", "pi_x", "value", "target", "abs_error"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.x.to_string(),
            self.pi_x.to_string(),
            self.value.approx().to_string(),
            serial::fraction_text(&self.target),
            format!("{:e}", self.abs_error),
        ]
    }
}

pub fn zeta(ctx: &Ctx, cmd: ZetaCommand) -> Result<Outcome> {
    match cmd {
        ZetaCommand::Ratio { n } => {
            let out = n
                .into_iter()
                .map(|n| Ok(ExactValue::new("zeta_ratio", n, zeta::zeta_ratio_exact(n)?)))
                .collect::<Result<Vec<_>>>()?;
            ctx.write(&out)?;
        }
        ZetaCommand::Bernoulli { m } => {
            let out = m
                .into_iter()
                .map(|m| Ok(ExactValue::new("bernoulli", m as u64, zeta::bernoulli(m)?)))
                .collect::<Result<Vec<_>>>()?;
            ctx.write(&out)?;
        }
        ZetaCommand::Coefficient { n } => {
            let out = n
                .into_iter()
                .map(|n| Ok(ExactValue::new("zeta_coefficient", n, zeta::zeta_even_coefficient(n)?)))
                .collect::<Result<Vec<_>>>()?;
            ctx.write(&out)?;
        }
        ZetaCommand::Interval { s, terms, width } => {
            if s < 2 {
                return Err(invalid("s", format!("{s}: ζ(s) diverges for s < 2")));
            }
            let terms = match (ctx.layers.pick(terms, "terms")?, width) {
                (_, Some(w)) => {
                    let w = serial::parse_rational(&w)
                        .filter(|w| w > &rational::from_u64(0))
                        .ok_or_else(|| invalid("width", format!("{w:?} is not a positive rational")))?;
                    zeta::terms_for_width(s, &w)
                }
                (Some(t), None) => t,
                (None, None) => bounds::DEFAULT_TERMS,
            };
            let iv = zeta::zeta_interval(s, terms)?;
            let out = ZetaEnclosure {
                s,
                terms,
                width_approx: rational::to_f64(&iv.width()),
                enclosure: Quantity::Enclosure(iv).compacted(),
            };
            ctx.write(&[out])?;
        }
        ZetaCommand::LChi4 { xs } => {
            let xs = resolve_xs(&xs)?;
            let table = ctx.table(*xs.iter().max().expect("non-empty"))?;
            let target = zeta::l_chi4_target();
            let records = products::sweep(&table, ProductKind::LChi4, ProductKind::L_CHI4_EXPONENT, &xs)?;
            let out: Vec<LChi4Out> = records
                .into_iter()
                .map(|r| {
                    let err = rational::sub(&r.fraction, &target);
                    LChi4Out {
                        x: r.x,
                        pi_x: r.pi_x,
                        abs_error: rational::to_f64(&err).abs(),
                        value: Quantity::Exact(r.fraction).compacted(),
                        target: target.clone(),
                    }
                })
                .collect();
            ctx.write(&out)?;
        }
    }
    Ok(Outcome::Clean)
}

// ---------------------------------------------------------------- sequence

impl Tabular for SequenceTerm {
    fn columns() -> &'static [&'static str] {
        &["index", "digits", "factors", "extracted", "complete", "listed", "list_match"]
    }

    fn cells(&self) -> Vec<String> {
        let mut factors: Vec<String> = self
            .factorization
            .factors
            .iter()
            .map(|f| {
                let p = abbreviate(&f.prime.to_string());
                if f.exponent > 1 {
                    format!("{p}^{}", f.exponent)
                } else {
                    p
                }
            })
            .collect();
        factors.extend(
            self.factorization
                .unfactored
                .iter()
                .map(|c| format!("[{}]", abbreviate(&c.to_string()))),
        );
        vec![
            self.index.to_string(),
            self.source_digits.to_string(),
            factors.join("*"),
            abbreviate(&self.extracted.to_string()),
            self.complete.to_string(),
            self.listed_value.map_or("-".to_string(), |v| v.to_string()),
            serde_json::to_value(self.list_match)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
        ]
    }
}

impl Tabular for HarmonicSum {
    fn columns() -> &'static [&'static str] {
        &["x", "pi_x", "sum", "log_log_x", "drift"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.x.to_string(),
            self.pi_x.to_string(),
            self.sum_approx.to_string(),
            self.log_log_x.approx().to_string(),
            self.drift.approx().to_string(),
        ]
    }
}

fn effort(layers: &Layers, args: EffortArgs) -> Result<Effort> {
    let mut e = Effort::default();
    if let Some(v) = layers.pick(args.trial_bound, "trial_bound")? {
        e.trial_bound = v;
    }
    if let Some(v) = layers.pick(args.rho_iterations, "rho_iterations")? {
        e.rho_iterations = v;
    }
    if let Some(v) = layers.pick(args.rho_attempts, "rho_attempts")? {
        e.rho_attempts = v;
    }
    if let Some(v) = layers.pick(args.time_cap, "time_cap")? {
        e.time_cap = std::time::Duration::from_secs(v);
    }
    Ok(e)
}

pub fn sequence(ctx: &Ctx, cmd: SequenceCommand) -> Result<Outcome> {
    match cmd {
        SequenceCommand::Euclid { max, cap, effort: e } => {
            let cap = ctx.layers.pick(cap, "cap")?.unwrap_or(sequences::DEFAULT_EUCLID_CAP);
            if max == 0 || max > cap {
                return Err(invalid("max", format!("{max} must be in 1..={cap} (raise --cap)")));
            }
            let euclid = Euclid::new(effort(&ctx.layers, e)?, cap);
            let terms: Vec<SequenceTerm> = (1..=max)
                .into_par_iter()
                .map(|n| euclid.term(n))
                .collect::<Result<_, _>>()?;
            for t in &terms {
                if !t.complete {
                    warn(format!(
                        "n={}: factoring budget exhausted; {} is the largest prime found",
                        t.index, t.extracted
                    ));
                }
                if t.list_match == ListMatch::Mismatch {
                    warn(format!(
                        "n={}: computed {}, the printed list has {}",
                        t.index,
                        t.extracted,
                        t.listed_value.expect("mismatch implies a listed value")
                    ));
                }
            }
            ctx.write(&terms)?;
        }
        SequenceCommand::Hermite { count, cap } => {
            let cap = ctx.layers.pick(cap, "cap")?.unwrap_or(sequences::DEFAULT_HERMITE_CAP);
            let table = ctx.table(cap)?;
            let hermite = Hermite::new(&table, cap);
            let max = hermite.max_index()?;
            if count == 0 || count > max {
                return Err(invalid("count", format!("{count} must be in 1..={max} (π({cap}))")));
            }
            let terms = hermite.terms(count)?;
            for t in terms.iter().filter(|t| t.list_match == ListMatch::Mismatch) {
                warn(format!("k={}: computed {}, the printed list differs", t.index, t.extracted));
            }
            ctx.write(&terms)?;
        }
        SequenceCommand::Harmonic { x } => {
            if let Some(bad) = x.iter().find(|&&v| v < 3) {
                return Err(invalid("x", format!("{bad}: the harmonic comparison needs x >= 3")));
            }
            let table = ctx.table(*x.iter().max().expect("required"))?;
            let out = x
                .par_iter()
                .map(|&v| sequences::prime_harmonic_sum(&table, v))
                .collect::<Result<Vec<_>, _>>()?;
            ctx.write(&out)?;
        }
    }
    Ok(Outcome::Clean)
}
