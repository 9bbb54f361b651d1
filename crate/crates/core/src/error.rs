use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("basis index {0} out of range 0..=7")]
    BasisIndex(i64),

    #[error("product of degree {0} exceeds the supported maximum of 3")]
    DegreeOverflow(usize),

    #[error("cannot parse monomial `{input}`: {reason}")]
    ParseMonomial { input: String, reason: &'static str },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("resource guard: {0}")]
    ResourceGuard(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
