use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("conductor must be >= 1")]
    ZeroConductor,

    #[error("division by zero in Q(zeta_{conductor})")]
    DivisionByZero { conductor: u32 },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit index {index} out of range for n = {n}")]
    QubitIndexOutOfRange { index: u32, n: usize },

    #[error("unknown generator token `{token}`")]
    UnknownToken { token: String },

    #[error("word syntax error: {0}")]
    WordSyntax(String),

    #[error("element cap {cap} exceeded during closure (group is larger than the cap)")]
    ElementCapExceeded { cap: usize },

    #[error("element order exceeds bound {bound}; raise the bound and re-check")]
    OrderBoundExceeded { bound: u32 },

    #[error("element is not a member of the enumerated group")]
    ElementNotInGroup,

    #[error("invalid Dixon prime {p}: {reason}")]
    InvalidPrime { p: u64, reason: String },

    #[error("eigenspace splitting failed: {0}")]
    EigensplitFailure(String),

    #[error("table rejected as corrupt: {0}")]
    CorruptTable(String),

    #[error("inconsistent decomposition input: {0}")]
    InconsistentDecomposition(String),

    #[error("no sign character for n = {n}: relator {rule} is not satisfied by the all-(-1) assignment (its abelianization forces the value +1 on the controlled-Z generators)")]
    NoSignCharacter { n: usize, rule: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported rank n = {n}: {reason}")]
    UnsupportedRank { n: usize, reason: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
