//! Brute-force divisor enumeration, the ground truth for tests.

use crate::arith::{self, Natural};
use crate::error::{Error, Result};

/// Widest range [`divisors_in`] will enumerate.
pub const MAX_SPAN: u64 = 10_000_000;

/// Every `d ∈ [lo, hi]` with `d | n`, ascending. Zero is skipped.
pub fn divisors_in(n: &Natural, lo: &Natural, hi: &Natural) -> Result<Vec<Natural>> {
    if lo > hi {
        return Ok(Vec::new());
    }
    let span = hi - lo;
    if span > Natural::from(MAX_SPAN) {
        return Err(Error::RangeTooLarge(span + Natural::ONE));
    }
    let mut out = Vec::new();
    let mut d = lo.clone().max(Natural::ONE);
    while d <= *hi {
        if (n % &d).is_zero() {
            out.push(d.clone());
        }
        d += Natural::ONE;
    }
    Ok(out)
}

/// Smallest `d ∈ [2, ⌊√n⌋]` dividing `n`; `None` for primes, 0 and 1.
pub fn smallest_factor(n: &Natural) -> Option<Natural> {
    let root = arith::isqrt(n);
    if let (Ok(n), Ok(root)) = (u64::try_from(n), u64::try_from(&root)) {
        return (2..=root).find(|d| n % d == 0).map(Natural::from);
    }
    let mut d = Natural::from(2u8);
    while d <= root {
        if (n % &d).is_zero() {
            return Some(d);
        }
        d += Natural::ONE;
    }
    None
}

/// Primality by [`smallest_factor`]; only practical up to roughly 10^14.
pub fn is_prime(n: &Natural) -> bool {
    *n >= Natural::from(2u8) && smallest_factor(n).is_none()
}
