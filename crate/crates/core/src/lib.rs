//! Deterministic integer factorization that tests a whole block of candidate
//! divisors `[x − H_L, x + H_R]` at once.
//!
//! For each block a continued-fraction convergent `b/q` of `n/x²` turns
//! "does some `x + h` divide `n`?" into "is `h` an integer root of one
//! quadratic?". Blocks are certified in exact integer arithmetic before they
//! are trusted, so a sweep over `[2, ⌊√n⌋]` either returns a divisor or proves
//! `n` prime using on the order of `n^{1/3}` blocks.
//!
//! ```
//! use blockfactor::{factor, Config, Natural};
//!
//! let out = factor(&Natural::from(10403u32), &Config::default()).unwrap();
//! assert_eq!(out.divisor, Some(Natural::from(101u32)));
//! ```

pub mod arith;
pub mod blockscan;
pub mod cf;
pub mod driver;
mod error;
pub mod oracle;

pub use arith::{Integer, Natural};
pub use blockscan::{Block, BlockQuadratic, BlockScan};
pub use cf::Convergent;
pub use driver::{
    factor, factor_traced, rule_out_range, rule_out_range_traced, rule_out_range_with, trial_division,
    Config, FactorOutcome, Kind, RangeOutcome, ScanStats, Trace, Variant,
};
pub use error::{Error, Result};
