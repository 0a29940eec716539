use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the compilation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed cover: {0}")]
    MalformedCover(String),

    #[error("tree variable order is rotated by {0}; finish the rotation cycle before traversing")]
    RotatedTree(usize),

    #[error("PLA parse error on line {line}: {msg}")]
    Pla { line: usize, msg: String },

    #[error("cannot read image {path}: {msg}")]
    ImageRead { path: PathBuf, msg: String },

    #[error("unsupported image format: {0}")]
    UnsupportedImage(String),

    #[error("image has zero width or height")]
    EmptyImage,

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("cannot emit gate {gate}: {reason}")]
    Emit { gate: String, reason: String },

    #[error("gate `{0}` is not a classical reversible gate")]
    NotClassical(String),

    #[error("length mismatch: expected {expected} bits, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("statevector needs {needed} qubits, limit is {limit}")]
    QubitBudget { needed: usize, limit: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
