use thiserror::Error;

/// Failure categories shared by every module of the engine.
///
/// Each variant belongs to one of three classes (see [`Error::class`]):
/// bad input, a violated precondition of an otherwise well-formed input, or an
/// internal inconsistency detected by a self-check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("hyperplane H{index} contains the flat of the face")]
    InvalidHyperplane { index: usize },

    #[error("infinity is not generic: flat {flat} meets the hyperplane at infinity in the wrong codimension")]
    NonGenericInfinity { flat: String },

    #[error("vertex {vertex} is not simple: {facets} facets meet there")]
    NonSimpleVertex { vertex: String, facets: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("cut hyperplane does not meet the interior of the region")]
    NoCut,

    #[error("facet list does not match the region: {0}")]
    Mismatch(String),

    #[error("unsupported form: {0}")]
    UnsupportedForm(String),

    #[error("inconsistent strata data at {stratum}: {message}")]
    InconsistentStrata { stratum: String, message: String },

    #[error("internal inconsistency ({invariant}): {message}")]
    Internal { invariant: String, message: String },
}

/// Coarse classification used for process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Validation,
    Precondition,
    Internal,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::DimensionMismatch { .. }
            | Error::Parse { .. }
            | Error::InvalidInput(_)
            | Error::Mismatch(_)
            | Error::InconsistentStrata { .. } => ErrorClass::Validation,
            Error::Degenerate(_)
            | Error::InvalidHyperplane { .. }
            | Error::NonGenericInfinity { .. }
            | Error::NonSimpleVertex { .. }
            | Error::Precondition(_)
            | Error::NoCut
            | Error::UnsupportedForm(_) => ErrorClass::Precondition,
            Error::Internal { .. } => ErrorClass::Internal,
        }
    }

    pub(crate) fn internal(invariant: &str, message: impl Into<String>) -> Self {
        Error::Internal {
            invariant: invariant.to_string(),
            message: message.into(),
        }
    }

    pub fn parse(field: &str, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.to_string(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
