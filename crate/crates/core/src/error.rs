use thiserror::Error;

#[derive(Debug, Error)]
pub enum WalkError {
    #[error("lambda = {0} lies outside [-1, 1]")]
    LambdaOutOfRange(f64),

    #[error("non-finite argument: {0}")]
    NonFinite(f64),

    #[error("hypergeometric series does not terminate: neither a nor b is a non-positive integer")]
    NonTerminating,

    #[error("Pochhammer (c)_{index} vanishes before the series terminates")]
    VanishingDenominator { index: usize },

    #[error("displacement {d} is not reachable after {k} steps (parity or range)")]
    ParityInvalid { k: usize, d: i64 },

    #[error("return count {n0} exceeds trial count {n}")]
    CountsInvalid { n0: u64, n: u64 },

    #[error("dataset is empty")]
    EmptyData,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("estimation failed: {0}")]
    Estimation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = WalkError> = std::result::Result<T, E>;
