use blockfactor::arith::{self, Integer, Natural};
use blockfactor::blockscan::{self, build_quadratic, certify_block, integer_roots_in, BlockQuadratic};
use blockfactor::cf::convergent_bounded;
use proptest::prelude::*;

fn nat(v: u64) -> Natural {
    Natural::from(v)
}

/// `(n, x, h)` with `n ≥ 400`, `17nh³ ≤ x³`, `x − h ≥ 2` and `h ≤ 300`.
fn block_params() -> impl Strategy<Value = (u64, u64, u64)> {
    (400u64..1_000_000_000_000, 0u64..300, any::<u64>()).prop_filter_map(
        "needs a positive half-width",
        |(n, extra, pick)| {
            let start = u64::try_from(&arith::ceil_cbrt(&nat(17 * n))).unwrap();
            let x = start + extra * extra;
            let h_max = u64::try_from(&arith::block_halfwidth(&nat(x), &nat(n)))
                .unwrap()
                .min(300);
            (h_max >= 1 && x > h_max + 1).then(|| (n, x, 1 + pick % h_max))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn divisors_in_block_are_roots((n, x, h) in block_params(), plant in -300i64..=300, pick in any::<bool>()) {
        // optionally move n so that x + plant divides it
        let n = if pick && plant.unsigned_abs() <= h {
            let d = (x as i64 + plant) as u64;
            (n / d).max(1) * d
        } else {
            n
        };
        prop_assume!(n >= 400 && arith::block_halfwidth(&nat(x), &nat(n)) >= nat(h));
        let (nn, xn) = (nat(n), nat(x));
        let c = convergent_bounded(&nn, &xn.sqr(), &nat(4 * h));
        let quad = build_quadratic(&nn, &xn, &c.b, &c.q);
        prop_assert!(!quad.is_zero());
        prop_assert!(certify_block(&nn, &xn, &nat(h), &nat(h), &c.b, &c.q, &quad));
        for d in x - h..=x + h {
            if n % d == 0 {
                prop_assert!(quad.eval(&Integer::from(d as i64 - x as i64)).is_zero());
            }
        }
    }

    #[test]
    fn error_identity((n, x, h) in block_params(), pick in any::<u64>()) {
        let (nn, xn) = (nat(n), nat(x));
        let c = convergent_bounded(&nn, &xn.sqr(), &nat(4 * h));
        let quad = build_quadratic(&nn, &xn, &c.b, &c.q);
        let offset = (pick % (2 * h + 1)) as i64 - h as i64;
        let (hi, xi) = (Integer::from(offset), Integer::from(x));
        let qn = Integer::from(&c.q * &nn);
        let slope = &qn - Integer::from(&c.b * xn.sqr());
        // ε(h)·x²(x+h) with ε₁ = c0/x and ε₂/q' = (qn − bx²)/x²
        let eps_scaled = &quad.c0 * &xi * (&xi + &hi) - &hi * slope * (&xi + &hi) + qn * hi.sqr();
        prop_assert_eq!(eps_scaled, xi.sqr() * quad.eval(&hi));
    }

    #[test]
    fn roots_match_enumeration(c0 in -200i64..200, c1 in -60i64..60, c2 in -8i64..8, lo in -40i64..0, span in 0i64..80) {
        prop_assume!((c0, c1, c2) != (0, 0, 0));
        let quad = BlockQuadratic { c0: c0.into(), c1: c1.into(), c2: c2.into() };
        let roots = integer_roots_in(&quad, &lo.into(), &(lo + span).into()).unwrap();
        let expected: Vec<Integer> =
            (lo..=lo + span).filter(|h| c0 + c1 * h + c2 * h * h == 0).map(Integer::from).collect();
        prop_assert_eq!(roots, expected);
    }

    #[test]
    fn scan_is_sound((n, x, h) in block_params(), asym in any::<bool>()) {
        let nn = nat(n);
        let scan = if asym {
            blockscan::scan_block_asym(&nn, &nat(x), &nat(h)).unwrap()
        } else {
            blockscan::scan_block(&nn, &nat(x), &nat(h), &nat(h)).unwrap()
        };
        let block = &scan.block;
        prop_assert!(block.certified);
        prop_assert_eq!(&block.h_left, &nat(h));
        if !asym {
            prop_assert_eq!(&block.h_right, &nat(h));
        } else {
            prop_assert!(block.h_right >= block.h_left);
        }
        let (lo, hi) = (u64::try_from(&block.lo()).unwrap(), u64::try_from(&block.hi()).unwrap());
        let brute = (lo..=hi).find(|&d| d > 1 && d < n && n % d == 0);
        prop_assert_eq!(scan.divisor, brute.map(nat));
    }

    #[test]
    fn asym_widths_certify((n, x, _h) in block_params()) {
        let (nn, xn) = (nat(n), nat(x));
        let h_left = arith::block_halfwidth(&xn, &nn);
        let c = convergent_bounded(&nn, &xn.sqr(), &(&h_left * 4u8));
        let quad = build_quadratic(&nn, &xn, &c.b, &c.q);
        let (l, r) = blockscan::asym_half_widths(&nn, &xn, &c.b, &c.q, &quad).unwrap();
        prop_assert_eq!(&l, &h_left);
        prop_assert!(certify_block(&nn, &xn, &l, &r, &c.b, &c.q, &quad));
    }
}

#[test]
fn wide_asymmetric_block_stays_exact() {
    // n/x² = 2 exactly: the error slope vanishes and h_right comes from curvature alone
    let x = nat(1_000_000);
    let n = x.sqr() * 2u8 + nat(1);
    let h_left = arith::block_halfwidth(&x, &n);
    let scan = blockscan::scan_block_asym(&n, &x, &h_left).unwrap();
    assert!(scan.block.h_right > h_left * 10u8);
    let (lo, hi) = (
        u64::try_from(&scan.block.lo()).unwrap(),
        u64::try_from(&scan.block.hi()).unwrap(),
    );
    let n64 = u64::try_from(&n).unwrap();
    let brute = (lo..=hi).find(|d| n64 % d == 0);
    assert_eq!(scan.divisor, brute.map(nat));
}

#[test]
fn big_block_finds_planted_factor() {
    let p = Natural::from(10u8).pow(25) + nat(13);
    let m = Natural::from(10u8).pow(26) + nat(7);
    let n = &p * &m;
    let x = &p + nat(3);
    let h = arith::block_halfwidth(&x, &n);
    assert!(h > nat(3));
    let scan = blockscan::scan_block(&n, &x, &h, &h).unwrap();
    assert!(scan.divisors.contains(&p));
    assert!(scan.divisor.as_ref().is_some_and(|d| (&n % d).is_zero()));
}
