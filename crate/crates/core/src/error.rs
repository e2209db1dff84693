use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("grid misalignment: {0}")]
    Misaligned(String),

    #[error("resource guard: {requested} samples requested, cap is {cap}")]
    TooLarge { requested: usize, cap: usize },

    #[error("window truncation: {0}")]
    Truncation(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("no argument jump above 1/8 found; input is not quasi-periodic")]
    NotQuasiPeriodic,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
