use thiserror::Error;

/// Crate-wide error type. Precondition failures get their own variants so
/// callers (and the CLI exit-code mapping) can tell them apart.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operation undefined on a hypergraph with no edges")]
    EmptyHypergraph,

    #[error("uniformity mismatch: {0} vs {1}")]
    UniformityMismatch(usize, usize),

    #[error("not a tight tree")]
    NotTightTree,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("host is not r-partite with respect to the given classes")]
    NotRPartite,

    #[error("minimum codegree {found} is below the required {required}")]
    CodegreeTooLow { required: usize, found: usize },

    #[error("vertex coloring is not proper for the tree")]
    ImproperColoring,

    #[error("edge count does not exceed the density threshold")]
    BelowThreshold,

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A stage contradiction that the preconditions rule out. Carries the
    /// partial pipeline trace when one exists, for post-mortem inspection.
    #[error("internal invariant violated: {msg}")]
    InvariantViolation {
        msg: String,
        trace: Option<Box<crate::embed::EmbedTrace>>,
    },
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation {
            msg: msg.into(),
            trace: None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
