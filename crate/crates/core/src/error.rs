use alloc::string::String;
use core::fmt;

/// Errors raised by the certification library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must share an ambient dimension do not.
    DimensionMismatch { expected: usize, found: usize },
    /// An operation needs a nonempty set (S(f), a polyhedron, a union).
    EmptySet(&'static str),
    /// Malformed or inapplicable input.
    InvalidInput(String),
    /// A size guard refused to build an oversized object.
    CapExceeded {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    /// A text value could not be parsed as a rational.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::EmptySet(what) => write!(f, "{what}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::CapExceeded {
                what,
                limit,
                requested,
            } => write!(f, "{what} exceeds limit {limit} (requested {requested})"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
