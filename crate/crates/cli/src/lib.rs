//! Command-line front end: `factor`, `range` and `bench` modes.

use std::io::Write;
use std::path::PathBuf;

use blockfactor::{Config, Kind, Natural, ScanStats, Variant};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub mod bench;

/// Exit status for malformed or out-of-range arguments.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "blockfactor",
    version,
    about = "Deterministic block-method integer factorization"
)]
pub struct Cli {
    #[command(subcommand)]
    pub request: CliRequest,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum CliRequest {
    /// Find a non-trivial factor of n or prove it prime.
    Factor {
        #[arg(value_parser = parse_n)]
        n: Natural,
        #[arg(long, value_enum, default_value_t = VariantArg::Base)]
        variant: VariantArg,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        trial_multiplier: u32,
        /// Print operation counters as a JSON line after the result.
        #[arg(long)]
        stats: bool,
        #[arg(long)]
        parallel: bool,
    },
    /// Find a divisor of n in [z, z + w] or rule one out.
    Range {
        #[arg(value_parser = parse_n)]
        n: Natural,
        #[arg(value_parser = parse_natural)]
        z: Natural,
        #[arg(value_parser = parse_natural)]
        w: Natural,
        #[arg(long, value_enum, default_value_t = VariantArg::Base)]
        variant: VariantArg,
        #[arg(long)]
        stats: bool,
    },
    /// Time the block method against trial division on random semiprimes.
    Bench {
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=bench::MAX_BITS as i64))]
        bits: u32,
        #[arg(long)]
        cases: usize,
        #[arg(long)]
        seed: u64,
        /// Also sweep every fourth bit size from this one up to --bits.
        #[arg(long, value_parser = clap::value_parser!(u32).range(4..=bench::MAX_BITS as i64))]
        min_bits: Option<u32>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        trial_multiplier: u32,
        /// Write the report to this file as well as stdout.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Base,
    Asym,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Base => Variant::Base,
            VariantArg::Asym => Variant::Asymmetric,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("benchmark validation failed: {0}")]
    Bench(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => 1,
        }
    }
}

/// Counters as printed by `--stats`; field order is the output order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct StatsLine {
    pub blocks: u64,
    pub trial_divisions: u64,
    pub convergent_steps: u64,
    pub quadratics: u64,
    pub roots_tested: u64,
}

impl From<&ScanStats> for StatsLine {
    fn from(s: &ScanStats) -> Self {
        StatsLine {
            blocks: s.blocks_scanned,
            trial_divisions: s.trial_divisions,
            convergent_steps: s.convergent_steps,
            quadratics: s.quadratics_solved,
            roots_tested: s.roots_tested,
        }
    }
}

/// Decimal digits only; no sign, no separators.
pub fn parse_natural(s: &str) -> Result<Natural, String> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("`{s}` is not a non-negative decimal integer"));
    }
    s.parse::<Natural>().map_err(|e| e.to_string())
}

fn parse_n(s: &str) -> Result<Natural, String> {
    let n = parse_natural(s)?;
    if n < Natural::from(2u8) {
        return Err(format!("n must be at least 2, got {n}"));
    }
    Ok(n)
}

pub fn run(request: &CliRequest, out: &mut impl Write) -> Result<(), CliError> {
    match request {
        CliRequest::Factor {
            n,
            variant,
            trial_multiplier,
            stats,
            parallel,
        } => {
            let cfg = Config {
                variant: (*variant).into(),
                trial_multiplier: *trial_multiplier,
                parallel: *parallel,
            };
            let outcome = blockfactor::factor(n, &cfg).map_err(|e| CliError::Usage(e.to_string()))?;
            match (outcome.kind, &outcome.divisor) {
                (Kind::Composite, Some(d)) => writeln!(out, "factor: {d}")?,
                _ => writeln!(out, "prime")?,
            }
            if *stats {
                write_stats(out, &outcome.stats)?;
            }
        }
        CliRequest::Range {
            n,
            z,
            w,
            variant,
            stats,
        } => {
            let cfg = Config::with_variant((*variant).into());
            let outcome = blockfactor::rule_out_range_with(n, z, w, &cfg)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            match &outcome.divisor {
                Some(d) => writeln!(out, "divisor: {d}")?,
                None => writeln!(out, "none")?,
            }
            if *stats {
                write_stats(out, &outcome.stats)?;
            }
        }
        CliRequest::Bench {
            bits,
            cases,
            seed,
            min_bits,
            trial_multiplier,
            json,
        } => {
            let from = min_bits.unwrap_or(*bits);
            if from > *bits {
                return Err(CliError::Usage(format!(
                    "--min-bits {from} exceeds --bits {bits}"
                )));
            }
            let mut sizes: Vec<u32> = (from..*bits).step_by(4).collect();
            sizes.push(*bits);
            let report = bench::bench_sweep(&sizes, *cases, *seed, *trial_multiplier)?;
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            writeln!(out, "{text}")?;
            if let Some(path) = json {
                std::fs::write(path, format!("{text}\n"))?;
            }
        }
    }
    Ok(())
}

fn write_stats(out: &mut impl Write, stats: &ScanStats) -> std::io::Result<()> {
    let line = serde_json::to_string(&StatsLine::from(stats)).expect("stats serialize");
    writeln!(out, "{line}")
}
