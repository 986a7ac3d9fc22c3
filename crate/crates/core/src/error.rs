use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a binary form needs at least one coefficient")]
    EmptyForm,
    #[error("degree {0} is below 2")]
    DegreeTooSmall(usize),
    #[error("forms have different degrees ({0} and {1})")]
    DegreeMismatch(usize, usize),
    #[error("not a morphism: F and G share a projective root")]
    ZeroResultant,
    #[error("[0, 0] is not a point of the projective line")]
    ZeroPoint,
    #[error("point is not normalized (coprime, y > 0 or y = 0 and x > 0)")]
    NotNormalized,
    #[error("number of terms must be at least 1")]
    ZeroTerms,
    #[error("working precision of {0} bits is below the 64-bit minimum")]
    PrecisionTooLow(u32),
    #[error("invalid partial factorization: {0}")]
    InvalidFactorization(&'static str),
    #[error("exact iterate needs {needed} decimal digits, budget is {budget}")]
    DigitBudgetExceeded { needed: u64, budget: u64 },
    #[error("archimedean input does not have sup-norm one")]
    NotUnitNorm,
    #[error("image of a unit vector underflowed to zero at working precision")]
    ArchUnderflow,
}
