use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// `InsufficientPrecision` and `PrecisionLoss` are recoverable: the caller is
/// expected to retry the whole computation with a larger working precision.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("precision loss: {0}")]
    PrecisionLoss(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(BigInt),
    #[error("discriminant {0} is not positive")]
    NonPositiveDiscriminant(BigInt),
    #[error("invalid discriminant {0}: must be 0 or 1 mod 4, positive and non-square")]
    InvalidDiscriminant(BigInt),
    #[error("polynomial not in F_d: {0}")]
    NotInFd(String),
    #[error("wrong degree: expected {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("odd weight parameter k = {0} is not allowed for a Gamma-class scope")]
    OddWeightForGammaScope(u32),
    #[error("audit failure: {0}")]
    AuditFailure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for the errors that a retry at higher precision may cure.
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::InsufficientPrecision(_) | Error::PrecisionLoss(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
