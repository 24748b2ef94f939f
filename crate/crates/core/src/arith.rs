//! Exact integer primitives.
//!
//! Every root here is computed on integers and finished with an exact
//! comparison. Floating point is only ever used to seed an iteration.

use dashu_int::ops::BitTest;

use crate::error::{Error, Result};

pub use dashu_int::{IBig, UBig};

/// Unbounded non-negative integer. Values below 2^128 are stored inline.
pub type Natural = UBig;
/// Unbounded signed integer, used for quadratic coefficients and offsets.
pub type Integer = IBig;

/// `⌊√n⌋`.
pub fn isqrt(n: &Natural) -> Natural {
    match u128::try_from(n) {
        Ok(v) => Natural::from(isqrt_u128(v)),
        Err(_) => isqrt_newton(n),
    }
}

/// `⌊∛v⌋`.
pub fn floor_cbrt(v: &Natural) -> Natural {
    match u128::try_from(v) {
        Ok(v) => Natural::from(cbrt_u128(v)),
        Err(_) => cbrt_newton(v),
    }
}

/// `⌈∛v⌉`, the least `t` with `t³ ≥ v`.
pub fn ceil_cbrt(v: &Natural) -> Natural {
    let r = floor_cbrt(v);
    if r.pow(3) == *v {
        r
    } else {
        r + Natural::ONE
    }
}

/// Largest `h` with `17·n·h³ ≤ x³`, i.e. `⌊x / (17n)^{1/3}⌋`.
///
/// `h³ ≤ x³/(17n)` holds iff `h³ ≤ ⌊x³/(17n)⌋`, so this is a floor cube root
/// of an integer quotient and stays exact.
pub fn block_halfwidth(x: &Natural, n: &Natural) -> Natural {
    debug_assert!(!n.is_zero());
    floor_cbrt(&(x.pow(3) / (n * 17u8)))
}

/// Nearest integer to `p/q`, with exact halves rounded down.
pub fn nearest_div(p: &Natural, q: &Natural) -> Result<Natural> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let quot = p / q;
    let rem = p % q;
    // 2r > q without doubling anything
    if rem > q - &rem {
        Ok(quot + Natural::ONE)
    } else {
        Ok(quot)
    }
}

/// Whether `d` divides `n`.
pub fn divides(d: &Natural, n: &Natural) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok((n % d).is_zero())
}

/// `Some(√n)` when `n` is a perfect square.
pub fn exact_sqrt(n: &Natural) -> Option<Natural> {
    let r = isqrt(n);
    (r.sqr() == *n).then_some(r)
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let seed = ((n as f64).sqrt() as u128).max(1);
    // one Newton step from any positive seed lands at or above the root
    let mut r = (seed + n / seed) / 2;
    while r.checked_mul(r).is_none_or(|s| s > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|s| s <= n) {
        r += 1;
    }
    r
}

fn cube_u128(r: u128) -> Option<u128> {
    r.checked_mul(r)?.checked_mul(r)
}

fn cbrt_u128(n: u128) -> u128 {
    if n < 8 {
        return u128::from(n > 0);
    }
    let seed = ((n as f64).cbrt() as u128).max(1);
    let mut r = (2 * seed + n / (seed * seed)) / 3;
    while cube_u128(r).is_none_or(|c| c > n) {
        r -= 1;
    }
    while cube_u128(r + 1).is_some_and(|c| c <= n) {
        r += 1;
    }
    r
}

fn isqrt_newton(n: &Natural) -> Natural {
    if n.is_zero() {
        return Natural::ZERO;
    }
    let mut x = Natural::ONE << n.bit_len().div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

fn cbrt_newton(n: &Natural) -> Natural {
    if n.is_zero() {
        return Natural::ZERO;
    }
    let mut x = Natural::ONE << n.bit_len().div_ceil(3);
    loop {
        let y = (&x * 2u8 + n / x.sqr()) / 3u8;
        if y >= x {
            return x;
        }
        x = y;
    }
}
