//! Semiprime benchmark: base and asymmetric sweeps against plain trial division.
//!
//! Everything except the `wall_time` fields is a pure function of
//! `(bits, cases, seed)`.

use std::time::Instant;

use blockfactor::{arith, oracle, Config, FactorOutcome, Kind, Natural, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::CliError;

/// Widest semiprime the harness will generate.
pub const MAX_BITS: u32 = 64;

const MACHINE_NOTE: &str = "fields named wall_time* are machine-dependent; every other field is reproducible";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: String,
    pub bits: u32,
    /// `base`, `asym` or `trial`.
    pub variant: &'static str,
    pub outcome: &'static str,
    pub divisor: Option<String>,
    /// `n < 400`: the sweep never runs and only trial division is exercised.
    pub trial_only: bool,
    pub blocks_scanned: u64,
    pub trial_divisions: u64,
    pub convergent_steps: u64,
    pub wall_time_ns: u64,
}

/// One row per bit size comparing the base sweep with trial division.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossoverRow {
    pub bits: u32,
    pub cases: usize,
    /// Mean of `trial_divisions + blocks_scanned` for the base sweep.
    pub base_ops: f64,
    /// Mean trial divisions needed by plain trial division.
    pub trial_ops: f64,
    pub op_ratio: f64,
    pub wall_time_base_ns: u64,
    pub wall_time_trial_ns: u64,
    pub wall_time_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Aggregate {
    /// Geometric mean over cases with a non-empty sweep of asym/base block counts.
    pub asym_base_block_ratio: Option<f64>,
    /// `1 − Σ asym blocks / Σ base blocks`.
    pub asym_block_reduction: Option<f64>,
    pub crossover: Vec<CrossoverRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub note: &'static str,
    pub records: Vec<BenchRecord>,
    pub aggregate: Aggregate,
}

/// Runs [`bench_suite`] for each size and merges the reports.
pub fn bench_sweep(
    bit_sizes: &[u32],
    cases: usize,
    seed: u64,
    trial_multiplier: u32,
) -> Result<BenchReport, CliError> {
    let mut records = Vec::new();
    let mut crossover = Vec::new();
    for &bits in bit_sizes {
        let report = bench_suite_with(bits, cases, seed, trial_multiplier)?;
        records.extend(report.records);
        crossover.extend(report.aggregate.crossover);
    }
    let (asym_base_block_ratio, asym_block_reduction) = block_ratios(&records);
    Ok(BenchReport {
        note: MACHINE_NOTE,
        records,
        aggregate: Aggregate {
            asym_base_block_ratio,
            asym_block_reduction,
            crossover,
        },
    })
}

pub fn bench_suite(bits: u32, cases: usize, seed: u64) -> Result<BenchReport, CliError> {
    bench_suite_with(bits, cases, seed, 1)
}

fn bench_suite_with(
    bits: u32,
    cases: usize,
    seed: u64,
    trial_multiplier: u32,
) -> Result<BenchReport, CliError> {
    if !(4..=MAX_BITS).contains(&bits) {
        return Err(CliError::Usage(format!(
            "bits must be in 4..={MAX_BITS}, got {bits}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(bits) << 56));
    let mut records = Vec::with_capacity(cases * 3);
    let (mut base_ops, mut trial_ops) = (0u64, 0u64);
    let (mut base_time, mut trial_time) = (0u64, 0u64);

    for _ in 0..cases {
        let (p, q) = semiprime_factors(&mut rng, bits);
        let n = Natural::from(p) * Natural::from(q);
        let trial_only = n < Natural::from(400u16);

        for (label, variant) in [("base", Variant::Base), ("asym", Variant::Asymmetric)] {
            let cfg = Config {
                variant,
                trial_multiplier,
                parallel: false,
            };
            let start = Instant::now();
            let outcome = blockfactor::factor(&n, &cfg).map_err(|e| CliError::Bench(e.to_string()))?;
            let elapsed = elapsed_ns(start);
            validate(&n, &outcome)?;
            if variant == Variant::Base {
                base_ops += outcome.stats.trial_divisions + outcome.stats.blocks_scanned;
                base_time += elapsed;
            }
            records.push(BenchRecord {
                n: n.to_string(),
                bits,
                variant: label,
                outcome: "composite",
                divisor: outcome.divisor.as_ref().map(Natural::to_string),
                trial_only,
                blocks_scanned: outcome.stats.blocks_scanned,
                trial_divisions: outcome.stats.trial_divisions,
                convergent_steps: outcome.stats.convergent_steps,
                wall_time_ns: elapsed,
            });
        }

        let root = arith::isqrt(&n);
        let start = Instant::now();
        let found = blockfactor::trial_division(&n, &Natural::from(2u8), &root);
        let elapsed = elapsed_ns(start);
        let Some(d) = found else {
            return Err(CliError::Bench(format!(
                "trial division missed the factors of {n}"
            )));
        };
        let divisions = u64::try_from(&d).expect("factor fits in 64 bits") - 1;
        trial_ops += divisions;
        trial_time += elapsed;
        records.push(BenchRecord {
            n: n.to_string(),
            bits,
            variant: "trial",
            outcome: "composite",
            divisor: Some(d.to_string()),
            trial_only,
            blocks_scanned: 0,
            trial_divisions: divisions,
            convergent_steps: 0,
            wall_time_ns: elapsed,
        });
    }

    let mean = |total: u64| {
        if cases == 0 {
            0.0
        } else {
            total as f64 / cases as f64
        }
    };
    let ratio = |a: f64, b: f64| if b == 0.0 { 0.0 } else { a / b };
    let row = CrossoverRow {
        bits,
        cases,
        base_ops: mean(base_ops),
        trial_ops: mean(trial_ops),
        op_ratio: ratio(base_ops as f64, trial_ops as f64),
        wall_time_base_ns: base_time,
        wall_time_trial_ns: trial_time,
        wall_time_ratio: ratio(base_time as f64, trial_time as f64),
    };
    let (asym_base_block_ratio, asym_block_reduction) = block_ratios(&records);
    Ok(BenchReport {
        note: MACHINE_NOTE,
        records,
        aggregate: Aggregate {
            asym_base_block_ratio,
            asym_block_reduction,
            crossover: vec![row],
        },
    })
}

fn elapsed_ns(start: Instant) -> u64 {
    u64::try_from(start.elapsed().as_nanos()).unwrap_or(u64::MAX)
}

fn validate(n: &Natural, outcome: &FactorOutcome) -> Result<(), CliError> {
    match (&outcome.kind, &outcome.divisor) {
        (Kind::Composite, Some(d)) if *d > Natural::ONE && d < n && (n % d).is_zero() => Ok(()),
        _ => Err(CliError::Bench(format!("invalid outcome for {n}: {outcome:?}"))),
    }
}

fn block_ratios(records: &[BenchRecord]) -> (Option<f64>, Option<f64>) {
    let blocks = |variant: &'static str| {
        records
            .iter()
            .filter(move |r| r.variant == variant)
            .map(|r| r.blocks_scanned)
    };
    let pairs: Vec<(u64, u64)> = blocks("base").zip(blocks("asym")).collect();
    let logs: Vec<f64> = pairs
        .iter()
        .filter(|(base, _)| *base > 0)
        .map(|&(base, asym)| (asym as f64 / base as f64).ln())
        .collect();
    let geomean = (!logs.is_empty()).then(|| (logs.iter().sum::<f64>() / logs.len() as f64).exp());
    let (base_total, asym_total) = pairs.iter().fold((0u64, 0u64), |(b, a), &(x, y)| (b + x, a + y));
    let reduction = (base_total > 0).then(|| 1.0 - asym_total as f64 / base_total as f64);
    (geomean, reduction)
}

/// Two primes, of `bits/2` and `bits − bits/2` bits.
fn semiprime_factors(rng: &mut ChaCha8Rng, bits: u32) -> (u64, u64) {
    let low = bits / 2;
    (random_prime(rng, low), random_prime(rng, bits - low))
}

/// First prime at or after a uniform draw from `[2^(k−1), 2^k)`.
fn random_prime(rng: &mut ChaCha8Rng, k: u32) -> u64 {
    let mut candidate = rng.gen_range(1u64 << (k - 1)..1u64 << k);
    while !oracle::is_prime(&Natural::from(candidate)) {
        candidate += 1;
    }
    candidate
}
