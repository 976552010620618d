use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("duplicate edge between nodes {0} and {1}")]
    DuplicateEdge(usize, usize),

    #[error("length mismatch: expected {expected} {what}, got {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{qubits} qubits exceeds the dense capacity of {max}")]
    Capacity { qubits: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("eigendecomposition does not reproduce the matrix (deviation {0:e})")]
    EigenFailure(f64),

    #[error("not a stoquastic-form walk; complex amplitudes unsupported")]
    ComplexAmplitudes,

    #[error("graph is not column-collapsible from this start node (closure residual {0:e})")]
    NotCollapsible(f64),

    #[error("unsupported gate: {0}")]
    UnsupportedGate(String),

    #[error("insufficient ancillas: need {needed}, have {available}")]
    InsufficientAncillas { needed: usize, available: usize },

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
