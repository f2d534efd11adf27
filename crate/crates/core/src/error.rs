use thiserror::Error;

/// Errors raised by the library.
///
/// The variants fall into two families that the CLI maps onto different exit
/// codes: malformed input (`InvalidInput`, `Parse`) and mathematical
/// precondition failures (everything else).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource bound exceeded: {0}")]
    ResourceLimit(String),

    #[error("out of truncation: {0}")]
    OutOfTruncation(String),
}

impl Error {
    /// True for errors caused by malformed input rather than by a failed
    /// mathematical precondition.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput(_) | Error::Parse(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! bail {
    ($variant:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$variant(format!($($arg)*)))
    };
}

pub(crate) use bail;
