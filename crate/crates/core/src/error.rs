use thiserror::Error;

use crate::quantum::Qubit;

/// Errors raised by the simulation and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit {qubit:?} is not part of a {num_qubits}-qubit register")]
    InvalidQubit { qubit: Qubit, num_qubits: usize },

    #[error("qubit {0:?} appears more than once among controls and target")]
    OverlappingQubits(Qubit),

    #[error("controlled gate needs at least one control qubit")]
    NoControls,

    #[error("expected a {expected}-qubit state, got {actual} qubits")]
    WrongQubitCount { expected: usize, actual: usize },

    #[error("state vector of length {0} is not a 2- or 3-qubit register")]
    BadStateLength(usize),

    #[error("state is not normalized (norm² = {0})")]
    NotNormalized(f64),

    #[error("matrix is not unitary (max deviation {0:e})")]
    NotUnitary(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("predicate has the same value ({0}) at both ends of the segment")]
    NoBracket(bool),

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("ellipse fit failed: {0}")]
    Fit(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("parameter {name} = {value} is outside [{lo}, {hi}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
