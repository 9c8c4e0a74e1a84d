use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    Dimension { expected: usize, found: usize },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("gain {re}{im:+}i is not of unit modulus")]
    NonUnitGain { re: f64, im: f64 },

    #[error("edge weight {0} is not positive")]
    NonPositiveWeight(f64),

    #[error("vertices {0} and {1} are not adjacent")]
    InvalidPath(usize, usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graphs have different underlying graphs")]
    GraphMismatch,

    #[error("more than {cap} shortest paths between {from} and {to}")]
    PathExplosion { from: usize, to: usize, cap: usize },

    #[error("matrix is not Hermitian at ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("graph on {n} vertices exceeds the enumeration bound {bound}")]
    TooLarge { n: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
