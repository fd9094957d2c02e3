use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max |M - M^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("trace {re} + {im}i is not 1")]
    BadTrace { re: f64, im: f64 },

    #[error("negative eigenvalue {0:e} beyond clipping tolerance")]
    NegativeEigenvalue(f64),

    #[error("negative probability {0:e}")]
    NegativeProbability(f64),

    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("parameter `{name}` = {value} outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("Kraus completeness violated (max deviation {0:e})")]
    Incomplete(f64),

    #[error("matrix is singular")]
    Singular,

    #[error("superoperator is not diagonalizable: eigenspaces span {found} of {dim} dimensions")]
    Defective { found: usize, dim: usize },

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
