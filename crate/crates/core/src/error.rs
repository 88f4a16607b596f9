use alloc::string::String;

/// Errors raised by parameter validation and precondition checks.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a multigraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidParameter(alloc::format!($($arg)*))
    };
}

macro_rules! precondition {
    ($($arg:tt)*) => {
        $crate::error::Error::Precondition(alloc::format!($($arg)*))
    };
}

pub(crate) use invalid;
pub(crate) use precondition;
