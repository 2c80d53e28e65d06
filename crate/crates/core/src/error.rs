use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown graph name `{0}` (expected one of: square-ring, k23, k33)")]
    UnknownGraph(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("bitstring length {got} does not match {expected} nodes")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid bitstring `{0}`: only '0' and '1' are allowed")]
    InvalidBitstring(String),

    #[error("{what}: {n} exceeds the supported maximum of {max}")]
    TooLarge { what: &'static str, n: usize, max: usize },

    #[error("hamiltonian is not diagonal in the computational basis (term `{0}`)")]
    NotDiagonal(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("infeasible initial state `{state}`: edge ({i},{j}) has both endpoints occupied")]
    Infeasible { state: String, i: usize, j: usize },

    #[error("invalid optimizer input: {0}")]
    InvalidOptimizer(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("failed to parse edge list: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
