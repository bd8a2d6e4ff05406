use thiserror::Error;

/// Failures reported by the library.
///
/// `Parse`, `Validation`, `Coin`, `Domain` and `Precondition` describe bad
/// input. `Internal` means an invariant that should hold on every valid input
/// was broken.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("invalid coin: {0}")]
    Coin(#[from] CoinError),

    #[error("{0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    Mismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("graph has no external face")]
    NoExternalFace,

    #[error("{0} is not a boundary vertex")]
    NotBoundary(String),

    #[error("enumeration over {edges} edges exceeds the limit of {limit}")]
    TooLarge { edges: usize, limit: usize },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    /// True when the failure is an internal invariant breach rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

/// The specific coin invariant that failed.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoinError {
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("entry d is not real (imaginary part {0:.3e})")]
    DNotReal(f64),

    #[error("entry {0} is zero")]
    ZeroEntry(char),

    #[error("d = {0} must satisfy 0 < |d| < 1")]
    DOutOfRange(f64),

    #[error("|omega| = {0} is not 1")]
    OmegaNotUnit(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
