use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be non-increasing")]
    InvalidPartition(Vec<usize>),

    #[error("partition {parts:?} has more than {d} rows")]
    TooManyRows { parts: Vec<usize>, d: usize },

    #[error("invalid probability distribution {0:?}")]
    InvalidDistribution(Vec<f64>),

    #[error("parameter `{name}` = {value} outside [0, 1]")]
    ParameterRange { name: &'static str, value: f64 },

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("eigenvalue {0:e} is below the clipping floor")]
    NegativeEigenvalue(f64),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("invalid code ensemble: {0}")]
    InvalidEnsemble(String),

    #[error("component {index} is not pure (largest eigenvalue {largest})")]
    NotPure { index: usize, largest: f64 },

    #[error("output dimension {d_out} exceeds environment dimension {d_env}")]
    EnvironmentTooSmall { d_out: usize, d_env: usize },

    #[error("brute-force problem size {size} exceeds the limit {limit}")]
    SizeGuard { size: usize, limit: usize },

    #[error("cannot decode parameter vector: {0}")]
    Decode(String),

    #[error("no bracket: {0}")]
    NoBracket(String),
}

pub type Result<T> = std::result::Result<T, Error>;
