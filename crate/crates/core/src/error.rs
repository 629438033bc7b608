use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// The requested size exceeds the configured [`Budget`](crate::Budget).
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// An internal cross-check failed; the result cannot be trusted.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::Error::Precondition(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
