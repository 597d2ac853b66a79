//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vector of length {0} is not a vectorized square matrix")]
    NotPerfectSquare(usize),

    #[error("state is not normalized: |norm - 1| = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("not a valid density operator: {0}")]
    InvalidDensityMatrix(String),

    #[error("duplicate target qubit {0}")]
    DuplicateTarget(usize),

    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitOutOfRange { index: usize, n_qubits: usize },

    #[error("{path}: bad IDX magic {found:#010x}, expected {expected:#010x}")]
    IdxBadMagic {
        path: String,
        found: u32,
        expected: u32,
    },

    #[error("{path}: truncated IDX file, needed {expected} bytes but found {actual}")]
    IdxTruncated {
        path: String,
        expected: usize,
        actual: usize,
    },

    #[error("IDX image/label count mismatch: {images} images vs {labels} labels")]
    IdxCountMismatch { images: usize, labels: usize },

    #[error("cannot amplitude-encode an all-zero pixel vector")]
    ZeroVector,

    #[error("cannot preprocess {from} pixels to {to}: {reason}")]
    ImpossibleTarget {
        from: usize,
        to: usize,
        reason: String,
    },

    #[error("{path}: bad dataset container: {reason}")]
    BadContainer { path: String, reason: String },

    #[error("model/readout configuration inconsistent: {0}")]
    ModelMismatch(String),

    #[error("target error rate {target:e} unreachable: {reason}")]
    UnreachableTarget { target: f64, reason: String },

    #[error("distillation stopped suppressing: p_{layer} = {p_l} >= 1")]
    NonSuppressing { layer: usize, p_l: f64 },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
