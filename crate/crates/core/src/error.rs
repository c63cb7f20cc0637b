use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different ring instances")]
    RingMismatch,
    #[error("divisor operator is not monic")]
    NonMonicDivisor,
    #[error("modulus polynomial is not monic or has degree < 1")]
    NonMonicModulus,
    #[error("modulus coefficients must be constants of the derivation")]
    NonConstantModulus,
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported degree {0} (at most 3)")]
    UnsupportedDegree(usize),
    #[error("{family} family with g = {g} has no eigenfunction identity")]
    NotCovered { family: String, g: u32 },
    #[error("quartic constraint a3^3 - 4 a2 a3 a4 + 8 a1 a4^2 = 0 violated")]
    QuarticConstraint,
    #[error("quartic family requires a4 != 0")]
    ZeroLeadingPotential,
    #[error("invalid family specification: {0}")]
    InvalidSpec(String),
    #[error("insufficient truncation: need at least {needed}, have {have}")]
    InsufficientTruncation { needed: usize, have: usize },
    #[error("multiplier p vanishes identically at the chosen eigenvalue")]
    DegenerateMultiplier,
    #[error("eigenvalue polynomial not squarefree after {0} resampling attempts")]
    ResamplingExhausted(usize),
    #[error("action matrix changed when the truncation was increased")]
    TruncationInconsistency,
    #[error("operators do not commute")]
    NotCommuting,
    #[error("operator is not in the expected form: {0}")]
    BadOperator(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error("parse error: {0}")]
    Parse(String),
}
