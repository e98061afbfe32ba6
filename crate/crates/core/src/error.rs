use thiserror::Error;

/// Errors raised by the library.
///
/// `Contradiction` is reserved for outcomes that disagree with a proven
/// statement (for example a missing congruent newform when the Eisenstein
/// locus is nonzero); the CLI maps it to exit code 2.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("argument divisible by modulus")]
    DivisibleByModulus,
    #[error("modulus divides the leading coefficient")]
    LeadingCoefficientVanishes,
    #[error("not in order: element has non-integral coefficients")]
    NotInOrder,
    #[error("bad characteristic {p} for level {level}")]
    BadCharacteristic { p: u64, level: u64 },
    #[error("outside theorem hypothesis: {0}")]
    OutsideHypothesis(String),
    #[error("subspace is not stable under {0}")]
    NotStable(String),
    #[error("insufficient truncation: need {needed} terms, have {have}")]
    InsufficientTruncation { needed: usize, have: usize },
    #[error("no qualifying auxiliary primes within budget {0}; increase budget")]
    IncreaseBudget(u64),
    #[error("Hecke field degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("ramified case out of scope: ell = {0}")]
    Ramified(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
