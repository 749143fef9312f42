use alloc::string::String;

/// Errors raised by state constructors, element constructors and solvers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// The truncated Fock space is too small for the requested state.
    #[error(
        "Fock truncation at dimension {dim} leaves tail population {tail:e}; \
         retry with dimension {suggested}"
    )]
    TruncationInsufficient {
        dim: usize,
        tail: f64,
        suggested: usize,
    },

    /// The quantity has no finite value for these parameters
    /// (no fringe, zero Fisher information, complete loss, ...).
    #[error("undefined: {0}")]
    Undefined(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
