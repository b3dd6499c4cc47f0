use alloc::string::String;
use core::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Malformed textual input.
    Parse(String),
    /// An argument violates an operation's precondition.
    Domain(String),
    /// A specialization or projection did not clear its denominators.
    NotExact(String),
    /// Input exceeds a configured enumeration bound.
    ScaleGuard(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse(m) => write!(f, "parse error: {m}"),
            Error::Domain(m) => write!(f, "invalid input: {m}"),
            Error::NotExact(m) => write!(f, "inexact: {m}"),
            Error::ScaleGuard(m) => write!(f, "scale guard: {m}"),
        }
    }
}

impl core::error::Error for Error {}
