//! Common error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Errors produced by the library.
///
/// The variants map onto the process exit codes used by the CLI front end:
/// invalid input (usage), resource limits, verification failures, and
/// internal invariant violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the inputs was violated.
    InvalidInput(String),
    /// A configurable cap (group size, partition weight, class count, …) was
    /// exceeded; the message names the offending cap.
    ResourceLimit(String),
    /// The requested operation is not defined in this regime
    /// (e.g. `SL_2` character-ratio transfer).
    Unsupported(String),
    /// An internal invariant failed; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::ResourceLimit(m) => write!(f, "resource limit exceeded: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Shorthand constructors.
impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
    pub fn limit(msg: impl Into<String>) -> Self {
        Error::ResourceLimit(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
