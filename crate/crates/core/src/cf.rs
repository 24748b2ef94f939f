//! Continued-fraction convergents of a rational, cut off at a denominator bound.

use crate::arith::Natural;

/// A convergent `b/q` of `num/den`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub b: Natural,
    pub q: Natural,
    /// Denominator of the following convergent; `None` when `exact`.
    pub q_next: Option<Natural>,
    /// `b/q == num/den`.
    pub exact: bool,
}

/// Returns the convergent of `num/den` with the largest index whose
/// denominator is at most `bound`.
///
/// The Euclidean algorithm is run one partial quotient at a time and stops
/// as soon as the next denominator is known to exceed `bound`, so at most one
/// denominator past the bound is ever formed. Since `q₀ = q₁ = 1` can happen,
/// ties go to the later convergent.
pub fn convergent_bounded(num: &Natural, den: &Natural, bound: &Natural) -> Convergent {
    convergent_bounded_counted(num, den, bound).0
}

/// [`convergent_bounded`] plus the number of Euclidean division steps taken.
pub fn convergent_bounded_counted(num: &Natural, den: &Natural, bound: &Natural) -> (Convergent, u64) {
    assert!(!den.is_zero(), "convergent of a fraction with zero denominator");

    let mut steps = 1u64;
    // (b, q) is the current convergent, (b_prev, q_prev) the one before it
    let (mut b, mut q) = (num / den, Natural::ONE);
    let (mut b_prev, mut q_prev) = (Natural::ONE, Natural::ZERO);
    let (mut dividend, mut divisor) = (den.clone(), num % den);

    loop {
        if divisor.is_zero() {
            let conv = Convergent {
                b,
                q,
                q_next: None,
                exact: true,
            };
            return (conv, steps);
        }
        steps += 1;
        let partial = &dividend / &divisor;
        let rem = &dividend % &divisor;
        let q_next = &partial * &q + &q_prev;
        if q_next > *bound {
            let conv = Convergent {
                b,
                q,
                q_next: Some(q_next),
                exact: false,
            };
            return (conv, steps);
        }
        let b_next = &partial * &b + &b_prev;
        b_prev = std::mem::replace(&mut b, b_next);
        q_prev = std::mem::replace(&mut q, q_next);
        dividend = std::mem::replace(&mut divisor, rem);
    }
}
