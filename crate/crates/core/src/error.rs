use crate::arith::Natural;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected an integer n >= 2, got {0}")]
    TooSmall(Natural),
    #[error("quadratic coefficients are all zero")]
    VanishingQuadratic,
    #[error("convergent denominator {q} exceeds 4*h_left = {limit}")]
    DenominatorTooLarge { q: Natural, limit: Natural },
    #[error("range start must be at least 2, got {0}")]
    RangeStart(Natural),
    #[error("brute-force range of {0} integers is over the limit")]
    RangeTooLarge(Natural),
}

pub type Result<T> = std::result::Result<T, Error>;
