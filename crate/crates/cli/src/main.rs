mod cli;
mod commands;
mod config;
mod output;
mod xrange;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::Parser;
use pibound::bounds::BoundsError;
use pibound::primes::PrimesError;
use pibound::products::ProductError;
use pibound::sequences::SequenceError;
use pibound::zeta::ZetaError;

use cli::{Cli, Command, Format};
use commands::{Ctx, Outcome};
use config::{Invalid, Layers};

const EXIT_REQUIRED_FAILURE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

fn run(cli: Cli) -> Result<Outcome> {
    let g = cli.global;
    let layers = Layers::load(g.config.as_deref())?;
    let format = layers.pick(g.format.map(format_name), "format")?;
    let format = match format.as_deref() {
        None | Some("json") => Format::Json,
        Some("csv") => Format::Csv,
        Some("table") => Format::Table,
        Some(other) => return Err(config::invalid("format", format!("{other:?} (json|csv|table)"))),
    };
    let threads = layers.pick(g.threads, "threads")?.unwrap_or(0);
    let ctx = Ctx {
        format,
        out: layers.pick::<PathBuf>(g.out, "out")?,
        prime_limit: layers.pick(g.prime_limit, "prime_limit")?,
        layers,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .context("starting worker pool")?;
    pool.install(|| match cli.command {
        Command::Product(a) => commands::product(&ctx, a),
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::Zeta(c) => commands::zeta(&ctx, c),
        Command::Sequence(c) => commands::sequence(&ctx, c),
    })
}

fn format_name(f: Format) -> String {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Table => "table",
    }
    .to_string()
}

fn is_invalid(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.is::<Invalid>()
            || c.is::<BoundsError>()
            || c.is::<ProductError>()
            || c.is::<ZetaError>()
            || c.is::<PrimesError>()
            || c.downcast_ref::<SequenceError>()
                .is_some_and(|s| !matches!(s, SequenceError::Internal(_)))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Clean) => ExitCode::SUCCESS,
        Ok(Outcome::RequiredFailure) => ExitCode::from(EXIT_REQUIRED_FAILURE),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_invalid(&e) { EXIT_INVALID } else { EXIT_RUNTIME })
        }
    }
}
