use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

/// Rejections raised by grid construction, sampling and the operators.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A pointwise rule or a symbol produced NaN or an infinity.
    NonFinite { what: &'static str, index: usize },
    /// Transform lengths are restricted to powers of two.
    NotPowerOfTwo { n: usize },
    /// Two grid functions that must share a grid do not.
    GridMismatch,
    /// The operation needs a grid symmetric about 0 (or about `u = 0`).
    AsymmetricGrid,
    /// Non-positive integer argument of the Gamma function.
    Pole { re: f64 },
    InvalidParameter { name: &'static str, reason: String },
    /// Truncation of an integral leaves more than `tolerance` behind.
    QuadratureTail { estimate: f64, tolerance: f64, hint: &'static str },
    /// A corpus member or operator input does not vanish where it must.
    EdgeViolation { member: String, value: f64 },
    /// A rejection raised while processing one corpus member.
    Member { member: String, source: Box<Error> },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { what, index } => write!(f, "non-finite {what} at node {index}"),
            Error::NotPowerOfTwo { n } => write!(f, "length {n} is not a power of two"),
            Error::GridMismatch => f.write_str("grid functions live on different grids"),
            Error::AsymmetricGrid => f.write_str("operation requires a symmetric grid"),
            Error::Pole { re } => write!(f, "log-gamma pole at z = {re}"),
            Error::InvalidParameter { name, reason } => write!(f, "invalid {name}: {reason}"),
            Error::QuadratureTail { estimate, tolerance, hint } => write!(
                f,
                "quadrature tail estimate {estimate:.3e} exceeds {tolerance:.1e}; {hint}"
            ),
            Error::EdgeViolation { member, value } => {
                write!(f, "{member} does not vanish at the domain edge (|f| = {value:.3e})")
            }
            Error::Member { member, source } => write!(f, "{member}: {source}"),
        }
    }
}

impl core::error::Error for Error {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Error::Member { source, .. } => Some(source.as_ref()),
            _ => None,
        }
    }
}

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}

impl Error {
    /// The innermost error, looking through [`Error::Member`].
    pub fn root(&self) -> &Error {
        match self {
            Error::Member { source, .. } => source.root(),
            other => other,
        }
    }
}
