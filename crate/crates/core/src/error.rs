use thiserror::Error;

use crate::cartan::MatrixViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrystalError {
    #[error("matrix must be square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("expected {expected} {what}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("symmetrizer for index {index} must be positive, got {value}")]
    NonPositiveSymmetrizer { index: String, value: i64 },

    #[error("duplicate index identifier {0:?}")]
    DuplicateIndex(String),

    #[error("invalid Borcherds-Cartan matrix: {}", join(.0))]
    InvalidMatrix(Vec<MatrixViolation>),

    #[error("unknown index {0:?}")]
    UnknownIndex(String),

    #[error("bad operator ({index},{l}): real indices only admit l = 1 and l must be positive")]
    BadOperator { index: String, l: u32 },

    #[error("weight is not dominant: <h_{index}, lambda> = {value} < 0")]
    NotDominant { index: String, value: i64 },

    #[error("index sequence must contain every index; {0:?} is missing")]
    IncompleteSequence(String),

    #[error("index sequence must be nonempty")]
    EmptySequence,

    #[error(
        "interface violation at {node}: f({index},{l}) has weight {actual}, expected {expected}"
    )]
    InterfaceViolation {
        node: String,
        index: String,
        l: u32,
        expected: String,
        actual: String,
    },
}

fn join(v: &[MatrixViolation]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T> = std::result::Result<T, CrystalError>;
