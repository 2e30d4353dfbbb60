use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("unsupported oracle: {0}")]
    UnsupportedOracle(String),
    #[error("group elements belong to different oracles")]
    OracleMismatch,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("pivot limit of {0} exceeded")]
    PivotLimit(u64),
    #[error("cell outside the window: {0}")]
    OutOfWindow(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("instance too large for brute force: {0} columns (max 12)")]
    TooLarge(usize),
    #[error("operation requires an infinite group")]
    FiniteGroup,
    #[error("operation requires a finite group")]
    NotFinite,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by a configured resource cap.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::BudgetExceeded(_) | Error::PivotLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
