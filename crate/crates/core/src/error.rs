use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a unit in Z_{1}")]
    NotAUnit(String, u64),

    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    #[error("not ordinary: {0}")]
    NotOrdinary(String),

    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u64, u64),

    #[error("not embeddable into Z_{p}: {reason}")]
    NotEmbeddable { p: u64, reason: String },

    #[error("bad prime {q}: {reason}")]
    BadPrime { q: u64, reason: String },

    #[error("mode does not match level: {0}")]
    BadMode(String),

    #[error("theta series needs an even character")]
    OddCharacter,

    #[error("weight {0} is not integral")]
    NonIntegralWeight(String),

    #[error("all coefficients vanish modulo p^{0}")]
    InsufficientPrecision(u32),

    #[error("lambda = {lambda} too close to truncation {trunc} (guard {guard})")]
    TruncationTooShort { lambda: usize, trunc: usize, guard: usize },

    #[error("invalid Satake data at q = {q}: {reason}")]
    InvalidSatake { q: u64, reason: String },

    #[error("not integral: {0}")]
    NotIntegral(String),

    #[error("Euler product diverges at q = {0}")]
    Divergence(u64),

    #[error("invalid character: {0}")]
    InvalidCharacter(String),

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("{} validation problems: {}", .0.len(), join(.0))]
    Validation(Vec<Error>),

    #[error("io error: {0}")]
    Io(String),
}

fn join(errs: &[Error]) -> String {
    errs.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; ")
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}
