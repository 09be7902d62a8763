//! Exact simulation of Clifford+T circuits over ℚ(ζ₈).

mod circuit;
mod gate;
mod report;
mod sim;

pub use circuit::{Circuit, Step};
pub use gate::{conj_transpose, gate_library, is_identity, mat_eq, mat_mul, mat_pow, Gate, GateLibrary, Matrix};
pub use report::{probabilities, MeasurementReport};
pub use sim::{apply_gate, run_circuit, run_state};

use thiserror::Error;

use crate::exactnum::ExactError;
use crate::tensor::TensorError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QsimError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error("bad targets: {0}")]
    BadTargets(String),
    #[error("word of length {found} in a {expected}-qubit state")]
    WordLength { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("gate is not exactly unitary: {0}")]
    NotUnitary(String),
}
