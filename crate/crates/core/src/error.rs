use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("dimension {dim} is not the square of {factor}")]
    NotBipartite { dim: usize, factor: usize },

    #[error("operator is not Hermitian")]
    NotHermitian,

    #[error("qubit count {0} is outside the supported range 0..={max}", max = crate::psi::MAX_QUBITS)]
    QubitCeiling(u32),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("certificate failed: {field}: {detail}")]
    CertificateFailed { field: String, detail: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
