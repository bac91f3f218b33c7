use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Why a binary form cannot be used by the solver.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Inadmissible {
    #[error("degree {0} is below 3")]
    DegreeTooSmall(usize),
    #[error("f(x) = F(x,1) is not monic (leading coefficient {0})")]
    NonMonic(BigInt),
    #[error("f has a repeated root (gcd(f, f') is not constant)")]
    RepeatedRoot,
    #[error("f has complex roots ({real} real roots out of {degree})")]
    ComplexRoots { real: usize, degree: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inadmissible form: {0}")]
    Inadmissible(#[from] Inadmissible),
    #[error("m = {0} is not a square-free positive integer")]
    InvalidField(u64),
    #[error("K must be a rational >= 1, got {0}")]
    InvalidBound(BigRational),
    #[error("K' must be a nonnegative rational, got {0}")]
    NegativeBound(BigRational),
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    InvalidEpsilon(BigRational),
    #[error("isolation width must be positive, got {0}")]
    InvalidWidth(BigRational),
    #[error("{field}: {message}")]
    Parse { field: String, message: String },
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
