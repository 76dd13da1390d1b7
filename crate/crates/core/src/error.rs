use thiserror::Error;

/// Errors raised by the field, polynomial, factorization and code routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("size limit exceeded: {0}")]
    SizeLimitExceeded(String),
    #[error("characteristic {p} divides n = {n}")]
    CharacteristicDividesN { p: u64, n: u64 },
    #[error("zero has no multiplicative order")]
    ZeroHasNoOrder,
    #[error("{a} and {n} are not coprime")]
    NotCoprime { a: u64, n: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("leading coefficient of the divisor is not a unit")]
    NonUnitLeadingCoefficient,
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("expected an odd integer, got {0}")]
    EvenInput(u64),
    #[error("oracle refused: {0}")]
    OracleTooLarge(String),
    #[error("enumeration refused: {0}")]
    EnumerationTooLarge(String),
    #[error("nilpotency index t = {0} is below 2")]
    NilpotencyTooSmall(usize),
    #[error("Hensel lift inconsistency: {0}")]
    LiftMismatch(String),
    #[error("polynomial does not divide x^n - 1")]
    NotADivisor,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
