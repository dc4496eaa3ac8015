//! Error types shared across the library.

use thiserror::Error;

/// Errors produced by the exact-arithmetic and symbolic-dynamics layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ball input straddles a decision boundary at its current radius.
    /// The caller must refine precision or switch to exact input.
    #[error("undecidable at current precision: {0}")]
    Undecidable(String),

    /// Inversion was requested for a region whose closure contains the origin.
    #[error("region contains the origin; inversion undefined")]
    OriginInRegion,

    /// A degenerate intersection has endpoints outside the session field Q(sqrt(d)).
    #[error("intersection endpoints leave the session field: {0}")]
    FieldOverflow(String),

    /// A computed prototype image failed to match any catalogued state.
    /// This signals an implementation bug; the catalogue is closed.
    #[error("prototype image matches no catalogued state: {0}")]
    CatalogueViolation(String),

    /// A digit outside the alphabet (zero or a unit) was supplied.
    #[error("invalid digit: {0}")]
    InvalidDigit(String),

    /// The word is not valid (its cylinder is empty).
    #[error("word is not valid: {0}")]
    InvalidWord(String),

    /// An operation precondition failed.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// The Gauss map was applied to zero.
    #[error("gauss map undefined at zero")]
    ZeroInput,

    /// A sequence prefix fails regularity, so it is outside the closed shift.
    #[error("sequence leaves the closed shift at prefix length {0}")]
    NotInClosedShift(usize),

    /// A reversed continued-fraction evaluation hit a zero denominator.
    #[error("zero denominator in continued-fraction evaluation at index {0}")]
    ZeroDenominator(usize),

    /// Argument outside the domain of the digit substitution S.
    #[error("digit {0} is not in the domain of S")]
    NotInDomain(String),

    /// An internal invariant that the rewriting theory guarantees was violated.
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    /// Input claimed valid turned out invalid at some prefix.
    #[error("input sequence is not valid: {0}")]
    NotValid(String),

    /// A generator specification violates the hypotheses it must certify.
    #[error("generator hypothesis violated: {0}")]
    HypothesisViolated(String),

    /// A word required to be regular is not.
    #[error("word is not regular: {0}")]
    NotRegular(String),

    /// Two words that must have equal length do not.
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
