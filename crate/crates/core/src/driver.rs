//! The full sweep: trial division up to `x₀`, then consecutive certified
//! blocks until the left edge passes `⌊√n⌋`.

use std::ops::AddAssign;

use rayon::prelude::*;

use crate::arith::{self, Natural};
use crate::blockscan::{self, Block};
use crate::error::{Error, Result};

/// How the right half-width of each block is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// Symmetric blocks `[x − H, x + H]`.
    #[default]
    Base,
    /// `h_left = H`, `h_right` widened from the convergent's error terms.
    Asymmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub variant: Variant,
    /// Trial division runs up to `trial_multiplier · ⌈(17n)^{1/3}⌉`, capped at `⌊√n⌋`.
    pub trial_multiplier: u32,
    pub parallel: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            variant: Variant::Base,
            trial_multiplier: 1,
            parallel: false,
        }
    }
}

impl Config {
    pub fn with_variant(variant: Variant) -> Self {
        Config {
            variant,
            ..Config::default()
        }
    }
}

/// Operation counters for one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ScanStats {
    pub blocks_scanned: u64,
    pub trial_divisions: u64,
    /// Euclidean division steps spent generating convergents.
    pub convergent_steps: u64,
    pub quadratics_solved: u64,
    pub roots_tested: u64,
    pub hr_below_hl_events: u64,
}

impl AddAssign for ScanStats {
    fn add_assign(&mut self, rhs: Self) {
        self.blocks_scanned += rhs.blocks_scanned;
        self.trial_divisions += rhs.trial_divisions;
        self.convergent_steps += rhs.convergent_steps;
        self.quadratics_solved += rhs.quadratics_solved;
        self.roots_tested += rhs.roots_tested;
        self.hr_below_hl_events += rhs.hr_below_hl_events;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Prime,
    Composite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorOutcome {
    pub kind: Kind,
    pub divisor: Option<Natural>,
    pub stats: ScanStats,
}

impl FactorOutcome {
    pub fn is_prime(&self) -> bool {
        self.kind == Kind::Prime
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeOutcome {
    pub divisor: Option<Natural>,
    pub stats: ScanStats,
}

/// Everything a run looked at, in scan order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trace {
    /// Inclusive ranges covered by trial division.
    pub trial: Vec<(Natural, Natural)>,
    pub blocks: Vec<Block>,
}

impl Trace {
    fn append(&mut self, other: Trace) {
        self.trial.extend(other.trial);
        self.blocks.extend(other.blocks);
    }
}

/// Smallest `k ∈ [lo, hi]` dividing `n`.
pub fn trial_division(n: &Natural, lo: &Natural, hi: &Natural) -> Option<Natural> {
    trial_division_counted(n, lo, hi, |_| true).0
}

/// Smallest `k ∈ [lo, hi]` with `k | n` and `accept(k)`, plus the number of
/// divisions performed.
fn trial_division_counted(
    n: &Natural,
    lo: &Natural,
    hi: &Natural,
    accept: impl Fn(&Natural) -> bool,
) -> (Option<Natural>, u64) {
    debug_assert!(*lo >= Natural::from(2u8));
    if lo > hi {
        return (None, 0);
    }
    if let (Ok(n64), Ok(lo64), Ok(hi64)) = (u64::try_from(n), u64::try_from(lo), u64::try_from(hi)) {
        let mut count = 0;
        for k in lo64..=hi64 {
            count += 1;
            if n64 % k == 0 && accept(&Natural::from(k)) {
                return (Some(Natural::from(k)), count);
            }
        }
        return (None, count);
    }
    let mut count = 0;
    let mut k = lo.clone();
    while k <= *hi {
        count += 1;
        if (n % &k).is_zero() && accept(&k) {
            return (Some(k), count);
        }
        k += Natural::ONE;
    }
    (None, count)
}

/// Finds a non-trivial divisor of `n`, or certifies that `n` is prime.
pub fn factor(n: &Natural, cfg: &Config) -> Result<FactorOutcome> {
    factor_impl(n, cfg, None)
}

/// [`factor`], also returning every trial range and block it covered.
pub fn factor_traced(n: &Natural, cfg: &Config) -> Result<(FactorOutcome, Trace)> {
    let mut trace = Trace::default();
    let outcome = factor_impl(n, cfg, Some(&mut trace))?;
    Ok((outcome, trace))
}

fn trial_bound(n: &Natural, multiplier: u32) -> (Natural, Natural) {
    assert!(multiplier >= 1, "trial multiplier must be at least 1");
    let root = arith::isqrt(n);
    let cube = arith::ceil_cbrt(&(n * 17u8)) * multiplier;
    (cube.min(root.clone()), root)
}

fn factor_impl(n: &Natural, cfg: &Config, mut trace: Option<&mut Trace>) -> Result<FactorOutcome> {
    let two = Natural::from(2u8);
    if *n < two {
        return Err(Error::TooSmall(n.clone()));
    }
    let (x0, root) = trial_bound(n, cfg.trial_multiplier);
    let mut stats = ScanStats::default();

    let (found, count) = trial_division_counted(n, &two, &x0, |_| true);
    stats.trial_divisions += count;
    if let Some(t) = trace.as_deref_mut() {
        t.trial.push((two, x0.clone()));
    }
    if let Some(d) = found {
        return Ok(composite(d, stats));
    }

    let x = &x0 + 2u8;
    let nontrivial = |d: &Natural| d < n;
    let found = if cfg.parallel {
        sweep_parallel(
            n,
            cfg.variant,
            &(&x0 + 1u8),
            &root,
            &nontrivial,
            &mut stats,
            trace,
        )?
    } else {
        let mut sweep = Sweep::new(n, cfg.variant, &root, &nontrivial);
        let found = sweep.run(x, Natural::ONE, trace)?;
        stats += sweep.stats;
        found
    };
    Ok(match found {
        Some(d) => composite(d, stats),
        None => FactorOutcome {
            kind: Kind::Prime,
            divisor: None,
            stats,
        },
    })
}

fn composite(d: Natural, stats: ScanStats) -> FactorOutcome {
    FactorOutcome {
        kind: Kind::Composite,
        divisor: Some(d),
        stats,
    }
}

/// Looks for a divisor of `n` in `[z, z + w]`; `None` certifies there is none.
pub fn rule_out_range(n: &Natural, z: &Natural, w: &Natural) -> Result<Option<Natural>> {
    Ok(rule_out_range_with(n, z, w, &Config::default())?.divisor)
}

/// [`rule_out_range`] with a chosen variant and counters.
///
/// Blocks may overhang `[z, z + w]`; divisors outside it are ignored, and
/// divisors above `√n` inside it are reported.
pub fn rule_out_range_with(n: &Natural, z: &Natural, w: &Natural, cfg: &Config) -> Result<RangeOutcome> {
    rule_out_range_impl(n, z, w, cfg, None)
}

pub fn rule_out_range_traced(
    n: &Natural,
    z: &Natural,
    w: &Natural,
    cfg: &Config,
) -> Result<(RangeOutcome, Trace)> {
    let mut trace = Trace::default();
    let outcome = rule_out_range_impl(n, z, w, cfg, Some(&mut trace))?;
    Ok((outcome, trace))
}

fn rule_out_range_impl(
    n: &Natural,
    z: &Natural,
    w: &Natural,
    cfg: &Config,
    mut trace: Option<&mut Trace>,
) -> Result<RangeOutcome> {
    if *n < Natural::from(2u8) {
        return Err(Error::TooSmall(n.clone()));
    }
    if *z < Natural::from(2u8) {
        return Err(Error::RangeStart(z.clone()));
    }
    let end = z + w;
    let (x0, _) = trial_bound(n, cfg.trial_multiplier);
    let mut stats = ScanStats::default();

    if *z <= x0 {
        let hi = (&x0).min(&end).clone();
        let (found, count) = trial_division_counted(n, z, &hi, |_| true);
        stats.trial_divisions += count;
        if let Some(t) = trace.as_deref_mut() {
            t.trial.push((z.clone(), hi));
        }
        if found.is_some() || end <= x0 {
            return Ok(RangeOutcome {
                divisor: found,
                stats,
            });
        }
    }

    let x = if *z < x0 { &x0 + 2u8 } else { z + 1u8 };
    let inside = |d: &Natural| z <= d && *d <= end;
    let mut sweep = Sweep::new(n, cfg.variant, &end, &inside);
    let divisor = sweep.run(x, Natural::ONE, trace)?;
    stats += sweep.stats;
    Ok(RangeOutcome { divisor, stats })
}

/// A run of consecutive blocks, continuing while the left edge `x − H` is at
/// most `limit`.
struct Sweep<'a, F> {
    n: &'a Natural,
    variant: Variant,
    limit: &'a Natural,
    accept: &'a F,
    stats: ScanStats,
}

impl<'a, F: Fn(&Natural) -> bool> Sweep<'a, F> {
    fn new(n: &'a Natural, variant: Variant, limit: &'a Natural, accept: &'a F) -> Self {
        Sweep {
            n,
            variant,
            limit,
            accept,
            stats: ScanStats::default(),
        }
    }

    /// Scans from the block centred at `x` with left half-width `h`; returns
    /// the first accepted divisor.
    fn run(
        &mut self,
        mut x: Natural,
        mut h: Natural,
        mut trace: Option<&mut Trace>,
    ) -> Result<Option<Natural>> {
        let n = self.n;
        while x <= self.limit + &h {
            let scan = match self.variant {
                Variant::Base => blockscan::scan_block(n, &x, &h, &h)?,
                Variant::Asymmetric => blockscan::scan_block_asym(n, &x, &h)?,
            };
            self.stats += scan.stats;
            let block = scan.block;

            if block.h_left < h {
                // certification cut into the left side; cover the gap directly
                let lo = &x - &h;
                let hi = block.lo() - Natural::ONE;
                let (found, count) = trial_division_counted(n, &lo, &hi, self.accept);
                self.stats.trial_divisions += count;
                if let Some(t) = trace.as_deref_mut() {
                    t.trial.push((lo, hi));
                }
                if found.is_some() {
                    return Ok(found);
                }
            }

            let found = scan.divisors.into_iter().find(|d| (self.accept)(d));
            x += &block.h_left + &block.h_right + Natural::ONE;
            if let Some(t) = trace.as_deref_mut() {
                t.blocks.push(block);
            }
            if found.is_some() {
                return Ok(found);
            }
            h = arith::block_halfwidth(&x, n);
        }
        Ok(None)
    }
}

/// Chunks per parallel wave; fixed so results do not depend on thread count.
const WAVE: usize = 16;
const MAX_CHUNKS: u32 = 256;
const MIN_CHUNK_LEN: u32 = 1 << 12;

/// Splits `[start, root]` into contiguous chunks, each swept independently
/// from its own left edge. Chunks run in waves; the lowest chunk with a
/// divisor wins and everything after it is discarded, stats included.
fn sweep_parallel(
    n: &Natural,
    variant: Variant,
    start: &Natural,
    root: &Natural,
    accept: &(impl Fn(&Natural) -> bool + Sync),
    stats: &mut ScanStats,
    mut trace: Option<&mut Trace>,
) -> Result<Option<Natural>> {
    if start > root {
        return Ok(None);
    }
    let len = root - start + Natural::ONE;
    let chunk_len = (&len / MAX_CHUNKS + Natural::ONE).max(Natural::from(MIN_CHUNK_LEN));
    let mut chunks = Vec::new();
    let mut lo = start.clone();
    while lo <= *root {
        let hi = (&lo + &chunk_len - Natural::ONE).min(root.clone());
        chunks.push((lo, hi.clone()));
        lo = hi + Natural::ONE;
    }

    let tracing = trace.is_some();
    for wave in chunks.chunks(WAVE) {
        let results: Vec<Result<(Option<Natural>, ScanStats, Trace)>> = wave
            .par_iter()
            .map(|(lo, hi)| {
                // the first block's left edge sits exactly on `lo`
                let h = arith::block_halfwidth(lo, n).max(Natural::ONE);
                let x = lo + &h;
                let mut local = Trace::default();
                let mut sweep = Sweep::new(n, variant, hi, accept);
                let found = sweep.run(x, h, tracing.then_some(&mut local))?;
                Ok((found, sweep.stats, local))
            })
            .collect();
        for result in results {
            let (found, chunk_stats, chunk_trace) = result?;
            *stats += chunk_stats;
            if let Some(t) = trace.as_deref_mut() {
                t.append(chunk_trace);
            }
            if found.is_some() {
                return Ok(found);
            }
        }
    }
    Ok(None)
}
