use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("tuple has length {got}, expected {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("entry a_{0} is not squarefree")]
    NotSquarefree(usize),
    #[error("entries a_{0} and a_{1} are not coprime")]
    NotCoprime(usize, usize),
    #[error("all entries equal 1; x^p - 1 is reducible")]
    DegenerateUnit,
    #[error("entry a_{0} must be positive")]
    NonPositiveEntry(usize),
    #[error("radicand is not p-th power free")]
    NotPPowerFree,
    #[error("radicand must be at least 2")]
    RadicandTooSmall,
    #[error("trial division bound {0} exceeded while factoring")]
    FactorizationTooLarge(u64),
    #[error("radical operands have different bases")]
    BaseMismatch,
    #[error("value is not positive")]
    NonPositive,
    #[error("operation requires a tamely ramified field")]
    WrongType,
    #[error("degree mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("invalid shape window: {0}")]
    InvalidWindow(String),
    #[error("Maillet determinant not divisible by p^((p-3)/2)")]
    DivisibilityFailure,
    #[error("analytic class number is {0} away from an integer")]
    PrecisionLoss(f64),
    #[error("argument {0} outside the supported range")]
    OutOfRange(u64),
    #[error("enumeration of {0} tuples is too large")]
    TooLarge(u128),
    #[error("discriminant bound below p^(p-2)")]
    BoundTooSmall,
    #[error("radicand bound {0} exceeds the feasibility limit {1}")]
    InfeasibleBound(u64, u64),
}
