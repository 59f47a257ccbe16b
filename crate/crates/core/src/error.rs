use thiserror::Error;

/// Errors raised by the library.
///
/// Variants fall into two groups: user errors (bad input) and internal
/// consistency failures. Every identity checked internally is a theorem, so
/// the second group always indicates an implementation bug; see
/// [`Error::is_internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field extension degree must be at least 1")]
    InvalidDegree,
    #[error("defining polynomial is not monic irreducible of the requested degree")]
    NotIrreducible,
    #[error("field of order {0} exceeds the supported size")]
    FieldTooLarge(u64),
    #[error("element is not a generator of the multiplicative group")]
    NotAGenerator,
    #[error("coordinate out of range for the field")]
    InvalidElement,
    #[error("division by zero")]
    DivisionByZero,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("element is not a unit modulo the modulus")]
    NotAUnit,
    #[error("list is not a complete system of monic unit representatives")]
    InvalidRepresentatives,
    #[error("polynomial is not an exact divisor of the modulus with the given exponent")]
    NotExactDivisor,
    #[error("group order {order} exceeds the configured limit {limit}")]
    GroupTooLarge { order: u64, limit: u64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("the trivial character has no L-polynomial here")]
    TrivialCharacter,
    #[error("modulus degree must be at least 2 for low-degree predictions")]
    DegreeTooSmall,
    #[error("character value is requested at zero")]
    ZeroArgument,

    #[error("internal: inexact division in {0}")]
    InexactDivision(&'static str),
    #[error("internal: non-integer coefficient in {0}")]
    NonIntegerCoefficient(&'static str),
    #[error("internal: root of unity order {from} does not embed into order {to}")]
    EmbeddingMismatch { from: u64, to: u64 },
    #[error("internal: consistency check `{0}` failed")]
    CheckFailed(String),
}

impl Error {
    /// True for errors that signal a violated theorem (a bug), as opposed to
    /// invalid user input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision(_)
                | Error::NonIntegerCoefficient(_)
                | Error::EmbeddingMismatch { .. }
                | Error::CheckFailed(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
