use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "pibound", version, about = "Exact Euler products, zeta ratios and π(x) lower-bound verification")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GlobalArgs {
    /// Output format [default: json]
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads (0 = one per core)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// key=value file supplying defaults for any long option
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Sieve limit [env: PIBOUND_PRIME_LIMIT] [default: largest x needed]
    #[arg(long, global = true)]
    pub prime_limit: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Partial Euler-type products as reduced fractions
    Product(ProductArgs),
    /// Check every link of a bound chain
    Verify(VerifyArgs),
    /// Exact zeta values and enclosures
    #[command(subcommand)]
    Zeta(ZetaCommand),
    /// Euclid and Hermite prime sequences, prime harmonic sum
    #[command(subcommand)]
    Sequence(SequenceCommand),
}

#[derive(Args, Debug, Clone, Default)]
pub struct XArgs {
    /// Cutoffs, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "x_range")]
    pub x: Vec<u64>,
    /// A:B (×10 steps), A:B:geometric[:F] or A:B:linear[:STEP]
    #[arg(long)]
    pub x_range: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Euler,
    Ratio,
    #[value(name = "l-chi4")]
    LChi4,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    #[arg(long, value_enum, default_value = "euler")]
    pub kind: KindArg,
    /// Exponent s [default: 2 for euler, 1 for ratio]
    #[arg(long)]
    pub s: Option<u32>,
    #[command(flatten)]
    pub xs: XArgs,
    /// Attach the 2-adic growth check to each record
    #[arg(long)]
    pub growth: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainArg {
    Euler,
    Ratio,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub chain: ChainArg,
    /// Euler exponent (ignored by the ratio chain) [default: 2]
    #[arg(long)]
    pub s: Option<u32>,
    #[command(flatten)]
    pub xs: XArgs,
    /// Check the π bound at every integer in FROM:TO instead of per-x reports
    #[arg(long, conflicts_with_all = ["x", "x_range"])]
    pub sweep: Option<String>,
    /// Irrationality measure [default: 2 euler, 1 ratio]
    #[arg(long)]
    pub mu: Option<String>,
    /// Margin ε [default: 1/10]
    #[arg(long)]
    pub eps: Option<String>,
    /// Ratio-chain constant [default: 1]
    #[arg(long)]
    pub c4: Option<String>,
    /// ζ(s) partial-sum terms [default: 10000]
    #[arg(long)]
    pub terms: Option<u64>,
    /// The π bound is required from here on [default: 100; sweeps: none]
    #[arg(long)]
    pub x0: Option<u64>,
    /// Inflation of the ratio tail's leading term [default: 2]
    #[arg(long)]
    pub safety: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum ZetaCommand {
    /// ζ(2n)²/ζ(4n) exactly
    Ratio {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Bernoulli number B_m
    Bernoulli {
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
    },
    /// ζ(2n)/π^(2n)
    Coefficient {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Rational enclosure of ζ(s)
    Interval {
        #[arg(long)]
        s: u32,
        #[arg(long, conflicts_with = "width")]
        terms: Option<u64>,
        /// Pick the least number of terms reaching this width
        #[arg(long)]
        width: Option<String>,
    },
    /// χ mod 4 product against its limit 1/2
    #[command(name = "l-chi4")]
    LChi4 {
        #[command(flatten)]
        xs: XArgs,
    },
}

#[derive(Args, Debug, Clone, Default)]
pub struct EffortArgs {
    /// Trial-division bound [default: 1000000]
    #[arg(long)]
    pub trial_bound: Option<u64>,
    /// Pollard rho iterations per attempt [default: 16777216]
    #[arg(long)]
    pub rho_iterations: Option<u64>,
    /// Pollard rho attempts per cofactor [default: 24]
    #[arg(long)]
    pub rho_attempts: Option<u32>,
    /// Wall-clock budget per number, seconds [default: 120]
    #[arg(long)]
    pub time_cap: Option<u64>,
}

#[derive(Subcommand, Debug)]
pub enum SequenceCommand {
    /// Largest prime factor of n!+1 for n = 1..=max
    Euclid {
        #[arg(long)]
        max: u64,
        /// Largest admissible n [default: 25]
        #[arg(long)]
        cap: Option<u64>,
        #[command(flatten)]
        effort: EffortArgs,
    },
    /// Least prime factor of (p_k - 1)!+1 for k = 1..=count
    Hermite {
        #[arg(long)]
        count: u64,
        /// Primes up to this bound are admissible [default: 2000]
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Σ 1/p over p <= x against ln ln x
    Harmonic {
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
    },
}
