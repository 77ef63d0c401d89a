use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An operand or parameter falls outside the real domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The parameter regime is outside what the library models (complex branches).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// An exact computation would exceed the configured size budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// A precondition on the call itself was violated (empty ranges, zero rows).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// Sampling hit too few in-domain points to reach a verdict.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Unsupported(_))
    }
}
