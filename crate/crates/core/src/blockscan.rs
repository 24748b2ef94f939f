//! One block `[x − h_left, x + h_right]` tested against `n` with a single quadratic.
//!
//! With `b/q` a convergent of `n/x²` and `a = [qn/x]`, every divisor `x + h`
//! of `n` in a certified block is an integer root of
//! `g(h) = (qn − ax) + (bx − a)·h + b·h²`. Certification checks, in exact
//! integer arithmetic, that the error term `ε(h)` satisfying
//! `(x + h)·ε(h) = g(h)` stays strictly inside `(−1, 1)` over the block.

use dashu_int::ops::UnsignedAbs;

use crate::arith::{self, Integer, Natural};
use crate::cf;
use crate::driver::ScanStats;
use crate::error::{Error, Result};

/// Coefficients of `c0 + c1·h + c2·h²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockQuadratic {
    pub c0: Integer,
    pub c1: Integer,
    pub c2: Integer,
}

impl BlockQuadratic {
    pub fn eval(&self, h: &Integer) -> Integer {
        &self.c0 + h * (&self.c1 + h * &self.c2)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }
}

/// A scanned block and whether its error bound was certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub x: Natural,
    pub h_left: Natural,
    pub h_right: Natural,
    pub certified: bool,
}

impl Block {
    pub fn lo(&self) -> Natural {
        &self.x - &self.h_left
    }

    pub fn hi(&self) -> Natural {
        &self.x + &self.h_right
    }
}

/// Result of scanning one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockScan {
    /// Smallest divisor `d` of `n` in the block with `1 < d < n`.
    pub divisor: Option<Natural>,
    /// Every divisor `d > 1` of `n` found in the block, ascending. May include `n`.
    pub divisors: Vec<Natural>,
    /// The block actually certified and scanned.
    pub block: Block,
    pub stats: ScanStats,
}

/// Builds `g(h)` from `a = [qn/x]`: `(qn − ax, bx − a, b)`.
///
/// Panics if `x` or `q` is zero.
pub fn build_quadratic(n: &Natural, x: &Natural, b: &Natural, q: &Natural) -> BlockQuadratic {
    assert!(!q.is_zero(), "convergent denominator must be positive");
    let qn = q * n;
    let a = arith::nearest_div(&qn, x).expect("block center must be positive");
    let a = Integer::from(a);
    let x = Integer::from(x.clone());
    BlockQuadratic {
        c0: Integer::from(qn) - &a * &x,
        c1: Integer::from(b.clone()) * &x - a,
        c2: Integer::from(b.clone()),
    }
}

/// All integers `h` in `[lo, hi]` with `g(h) = 0`, ascending.
pub fn integer_roots_in(quad: &BlockQuadratic, lo: &Integer, hi: &Integer) -> Result<Vec<Integer>> {
    let BlockQuadratic { c0, c1, c2 } = quad;
    let mut roots = Vec::with_capacity(2);
    if !c2.is_zero() {
        let disc = c1.sqr() - Integer::from(4u8) * c2 * c0;
        if disc < Integer::ZERO {
            return Ok(roots);
        }
        let Some(s) = arith::exact_sqrt(&disc.unsigned_abs()) else {
            return Ok(roots);
        };
        let s = Integer::from(s);
        let two_a = c2 * Integer::from(2u8);
        for num in [-c1 - &s, -c1 + &s] {
            if (&num % &two_a).is_zero() {
                roots.push(num / &two_a);
            }
        }
    } else if !c1.is_zero() {
        if (c0 % c1).is_zero() {
            roots.push(-(c0 / c1));
        }
    } else if c0.is_zero() {
        return Err(Error::VanishingQuadratic);
    }
    roots.retain(|h| lo <= h && h <= hi);
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// Exact check that `|ε(h)| < 1` for every `h ∈ [−h_left, h_right]`.
///
/// Bounds `|ε(h)|` by `|c0|/x + max(h_left, h_right)·E/x² + qn·max(h_left²/(x²(x−h_left)), h_right²/x³)`
/// with `E = |qn − bx²|`, then multiplies through by `x³(x − h_left)`.
pub fn certify_block(
    n: &Natural,
    x: &Natural,
    h_left: &Natural,
    h_right: &Natural,
    b: &Natural,
    q: &Natural,
    quad: &BlockQuadratic,
) -> bool {
    if h_left >= x {
        return false;
    }
    let qn = q * n;
    let x2 = x.sqr();
    let e = approx_error(&qn, b, &x2);
    let inner = x - h_left;
    let widest = h_left.max(h_right);

    let linear = (&quad.c0).unsigned_abs() * &x2 * &inner + widest * e * x * &inner;
    let curvature = (h_left.sqr() * x).max(h_right.sqr() * &inner);
    linear + qn * curvature < x2 * x * inner
}

/// `|qn − bx²|`, the scaled error of `b/q` as an approximation of `n/x²`.
fn approx_error(qn: &Natural, b: &Natural, x2: &Natural) -> Natural {
    let bx2 = b * x2;
    if *qn >= bx2 {
        qn - bx2
    } else {
        bx2 - qn
    }
}

/// Left and right half-widths for an asymmetric block centred at `x`.
///
/// `h_left` is [`arith::block_halfwidth`]; `h_right` starts at
/// `min(⌊2(x−|c0|)x / 5E⌋, ⌊√(3(x−|c0|)x² / 5qn)⌋)` and is lowered until the
/// block certifies. Fails if `q > 4·h_left`.
pub fn asym_half_widths(
    n: &Natural,
    x: &Natural,
    b: &Natural,
    q: &Natural,
    quad: &BlockQuadratic,
) -> Result<(Natural, Natural)> {
    let h_left = arith::block_halfwidth(x, n);
    let limit = &h_left * 4u8;
    if *q > limit {
        return Err(Error::DenominatorTooLarge { q: q.clone(), limit });
    }
    let (h_right, _) = right_half_width(n, x, &h_left, b, q, quad);
    Ok((h_left, h_right))
}

/// Certified right half-width for a given `h_left`, and whether the width
/// formula came out below `h_left`.
///
/// A formula value below `h_left` is raised to `h_left` first, so the
/// asymmetric block is never narrower than the symmetric one.
fn right_half_width(
    n: &Natural,
    x: &Natural,
    h_left: &Natural,
    b: &Natural,
    q: &Natural,
    quad: &BlockQuadratic,
) -> (Natural, bool) {
    let qn = q * n;
    let x2 = x.sqr();
    // 1 − |ε₁| = slack/x
    let slack = x - (&quad.c0).unsigned_abs();
    let e = approx_error(&qn, b, &x2);

    let by_curvature = arith::isqrt(&(&slack * &x2 * 3u8 / (&qn * 5u8)));
    let formula = if e.is_zero() {
        by_curvature
    } else {
        let by_slope = &slack * x * 2u8 / (e * 5u8);
        by_slope.min(by_curvature)
    };

    let below = formula < *h_left;
    let mut h_right = formula.max(h_left.clone());
    while !h_right.is_zero() && !certify_block(n, x, h_left, &h_right, b, q, quad) {
        h_right -= Natural::ONE;
    }
    (h_right.clone(), below || h_right < *h_left)
}

/// Scans `[x − h_left, x + h_right]`.
///
/// Widths that fail certification are shrunk, `h_right` first; the returned
/// block holds the widths actually covered.
pub fn scan_block(n: &Natural, x: &Natural, h_left: &Natural, h_right: &Natural) -> Result<BlockScan> {
    scan(n, x, h_left, Some(h_right))
}

/// Scans a block with the given `h_left` and the asymmetric right width.
pub fn scan_block_asym(n: &Natural, x: &Natural, h_left: &Natural) -> Result<BlockScan> {
    scan(n, x, h_left, None)
}

fn scan(n: &Natural, x: &Natural, h_left: &Natural, h_right: Option<&Natural>) -> Result<BlockScan> {
    debug_assert!(x > h_left, "block must stay right of zero");
    let mut stats = ScanStats {
        blocks_scanned: 1,
        ..ScanStats::default()
    };

    let bound = (h_left * 4u8).max(Natural::ONE);
    let (conv, steps) = cf::convergent_bounded_counted(n, &x.sqr(), &bound);
    stats.convergent_steps += steps;
    let cf::Convergent { b, q, .. } = conv;
    let quad = build_quadratic(n, x, &b, &q);

    let mut h_left = h_left.clone();
    let mut h_right = match h_right {
        Some(h) => h.clone(),
        None => {
            let (h, below) = right_half_width(n, x, &h_left, &b, &q, &quad);
            stats.hr_below_hl_events += u64::from(below);
            h
        }
    };
    while !certify_block(n, x, &h_left, &h_right, &b, &q, &quad) {
        if h_right.is_zero() {
            // a single point always certifies: |c0|/x ≤ 1/2
            h_left -= Natural::ONE;
        } else {
            h_right -= Natural::ONE;
        }
    }

    stats.quadratics_solved += 1;
    let lo = -Integer::from(h_left.clone());
    let hi = Integer::from(h_right.clone());
    let x_signed = Integer::from(x.clone());
    let mut divisors = Vec::new();
    for h in integer_roots_in(&quad, &lo, &hi)? {
        let Ok(d) = Natural::try_from(&x_signed + h) else {
            continue;
        };
        if d <= Natural::ONE {
            continue;
        }
        stats.roots_tested += 1;
        if (n % &d).is_zero() {
            divisors.push(d);
        }
    }
    let divisor = divisors.iter().find(|d| *d < n).cloned();

    Ok(BlockScan {
        divisor,
        divisors,
        block: Block {
            x: x.clone(),
            h_left,
            h_right,
            certified: true,
        },
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from(v)
    }

    fn int(v: i64) -> Integer {
        Integer::from(v)
    }

    fn quad(c0: i64, c1: i64, c2: i64) -> BlockQuadratic {
        BlockQuadratic {
            c0: int(c0),
            c1: int(c1),
            c2: int(c2),
        }
    }

    #[test]
    fn build_quadratic_examples() {
        let n = nat(10403);
        assert_eq!(build_quadratic(&n, &nat(59), &nat(3), &nat(1)), quad(19, 1, 3));
        assert_eq!(build_quadratic(&n, &nat(101), &nat(1), &nat(1)), quad(0, -2, 1));
        let q = build_quadratic(&n, &n, &nat(7), &nat(1));
        assert!(q.c0.is_zero());
    }

    #[test]
    fn roots_examples() {
        let roots = integer_roots_in(&quad(0, -2, 1), &int(-1), &int(2)).unwrap();
        assert_eq!(roots, vec![int(0), int(2)]);
        assert!(integer_roots_in(&quad(19, 1, 3), &int(-1), &int(1))
            .unwrap()
            .is_empty());
        assert_eq!(
            integer_roots_in(&quad(0, 0, 5), &int(-3), &int(3)).unwrap(),
            vec![int(0)]
        );
    }

    #[test]
    fn roots_degenerate_cases() {
        // linear: 6 + 3h
        assert_eq!(
            integer_roots_in(&quad(6, 3, 0), &int(-5), &int(5)).unwrap(),
            vec![int(-2)]
        );
        assert!(integer_roots_in(&quad(7, 3, 0), &int(-5), &int(5))
            .unwrap()
            .is_empty());
        assert!(integer_roots_in(&quad(7, 0, 0), &int(-5), &int(5))
            .unwrap()
            .is_empty());
        assert_eq!(
            integer_roots_in(&quad(0, 0, 0), &int(-5), &int(5)),
            Err(Error::VanishingQuadratic)
        );
        // square discriminant, one root not integral: 2h² − 3h + 1 = (2h − 1)(h − 1)
        assert_eq!(
            integer_roots_in(&quad(1, -3, 2), &int(-5), &int(5)).unwrap(),
            vec![int(1)]
        );
        // out of range roots are dropped
        assert_eq!(
            integer_roots_in(&quad(0, -2, 1), &int(-1), &int(1)).unwrap(),
            vec![int(0)]
        );
    }

    #[test]
    fn certify_examples() {
        let n = nat(10403);
        let q101 = build_quadratic(&n, &nat(101), &nat(1), &nat(1));
        assert!(certify_block(
            &n,
            &nat(101),
            &nat(1),
            &nat(1),
            &nat(1),
            &nat(1),
            &q101
        ));
        let q59 = build_quadratic(&n, &nat(59), &nat(3), &nat(1));
        assert!(certify_block(
            &n,
            &nat(59),
            &nat(1),
            &nat(2),
            &nat(3),
            &nat(1),
            &q59
        ));
        assert!(!certify_block(
            &n,
            &nat(59),
            &nat(59),
            &nat(0),
            &nat(3),
            &nat(1),
            &q59
        ));
    }

    #[test]
    fn certify_fails_for_degenerate_left_width() {
        let n = Natural::from(10u64.pow(12) + 39);
        let x = nat(5000);
        let conv = cf::convergent_bounded(&n, &x.sqr(), &nat(4 * 4999));
        let quad = build_quadratic(&n, &x, &conv.b, &conv.q);
        assert!(!certify_block(
            &n,
            &x,
            &nat(4999),
            &nat(0),
            &conv.b,
            &conv.q,
            &quad
        ));
    }

    #[test]
    fn asym_example() {
        let n = nat(10403);
        let x = nat(59);
        let quad = build_quadratic(&n, &x, &nat(3), &nat(1));
        assert_eq!(
            asym_half_widths(&n, &x, &nat(3), &nat(1), &quad).unwrap(),
            (nat(1), nat(2))
        );
    }

    #[test]
    fn asym_rejects_large_denominator() {
        let n = nat(10403);
        let x = nat(59);
        let quad = build_quadratic(&n, &x, &nat(260), &nat(87));
        assert!(matches!(
            asym_half_widths(&n, &x, &nat(260), &nat(87), &quad),
            Err(Error::DenominatorTooLarge { .. })
        ));
    }

    #[test]
    fn asym_exact_approximation_uses_curvature_bound() {
        // n = 2·x² makes n/x² = 2/1 exactly, so E = 0
        let x = nat(1000);
        let n = x.sqr() * 2u8;
        let conv = cf::convergent_bounded(&n, &x.sqr(), &nat(4));
        assert!(conv.exact);
        let quad = build_quadratic(&n, &x, &conv.b, &conv.q);
        let (h_left, h_right) = asym_half_widths(&n, &x, &conv.b, &conv.q, &quad).unwrap();
        // c0 = 0, so slack = x and the curvature bound is ⌊√(3x³/5n)⌋ = ⌊√300⌋
        assert_eq!(h_left, arith::block_halfwidth(&x, &n));
        assert_eq!(h_right, nat(17));
        assert!(certify_block(&n, &x, &h_left, &h_right, &conv.b, &conv.q, &quad));
    }

    #[test]
    fn scan_examples() {
        let n = nat(10403);
        let hit = scan_block(&n, &nat(101), &nat(1), &nat(1)).unwrap();
        assert_eq!(hit.divisor, Some(nat(101)));
        assert_eq!(hit.block.h_left, nat(1));
        assert_eq!(hit.block.h_right, nat(1));
        assert!(hit.block.certified);

        let miss = scan_block(&n, &nat(59), &nat(1), &nat(1)).unwrap();
        assert_eq!(miss.divisor, None);
        assert_eq!(miss.stats.blocks_scanned, 1);
        assert_eq!(miss.stats.quadratics_solved, 1);

        let p = Natural::from(1_000_000_007u64);
        for x in [2000u64, 2500, 31_622] {
            let x = nat(x);
            let h = arith::block_halfwidth(&x, &p);
            assert_eq!(scan_block(&p, &x, &h, &h).unwrap().divisor, None);
        }
    }

    #[test]
    fn scan_shrinks_uncertifiable_widths() {
        // n < 400 and an over-wide block: certification must cut it down
        let n = nat(221);
        let scan = scan_block(&n, &nat(8), &nat(5), &nat(5)).unwrap();
        assert!(scan.block.h_left <= nat(5));
        assert!(scan.block.h_right < nat(5));
        let b = &scan.block;
        let conv = cf::convergent_bounded(&n, &nat(64), &nat(20));
        let quad = build_quadratic(&n, &nat(8), &conv.b, &conv.q);
        assert!(certify_block(
            &n, &b.x, &b.h_left, &b.h_right, &conv.b, &conv.q, &quad
        ));
    }
}
