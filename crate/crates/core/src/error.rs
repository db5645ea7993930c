use thiserror::Error;

/// Errors produced by the library.
///
/// The CLI maps each variant onto a message prefix and exit code, so the
/// variants follow the failure classes a caller has to tell apart rather
/// than the module that raised them.
#[derive(Debug, Error)]
pub enum Error {
    /// Input outside a function's mathematical domain.
    #[error("domain: {0}")]
    Domain(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    /// A product violates one of its invariants.
    #[error("{product}/{field}: {message}")]
    Validation {
        product: String,
        field: &'static str,
        message: String,
    },

    /// Inconsistent or incomplete run configuration.
    #[error("{0}")]
    Config(String),

    /// Linear-algebra failure (non-PSD Gram matrix, singular block).
    #[error("{0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
