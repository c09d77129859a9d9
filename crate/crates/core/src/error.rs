use thiserror::Error;

use crate::code::ProtocolId;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("negative probability {0}")]
    NegativeProbability(f64),
    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),
    #[error("parameter {name} = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("target fidelity {0} is below the reachable minimum 0.25")]
    TargetUnreachable(f64),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("map is not trace preserving (deviation {0:e})")]
    NotTracePreserving(f64),
    #[error("map is not completely positive (Choi eigenvalue {0:e})")]
    NotCompletelyPositive(f64),
    #[error("expected a {expected} matrix, got {rows}x{cols}")]
    ShapeMismatch {
        expected: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("Pauli string has {got} qubits, code has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid Pauli string {0:?}")]
    InvalidPauliString(String),
    #[error("unknown protocol {0:?}")]
    UnknownProtocol(String),
    #[error("residual error has a nontrivial syndrome")]
    NontrivialSyndrome,
    #[error("protocol {0} has no closed-form Pauli map")]
    UnsupportedProtocol(ProtocolId),
    #[error("number of concatenation levels must be at least 1")]
    ZeroLevels,
    #[error("protocol sequence is empty")]
    EmptySequence,
    #[error("protocol sequence mixes three-qubit and five-qubit protocols")]
    MixedFamilies,
    #[error("plan has no levels")]
    EmptyPlan,
    #[error("noise specification: {0}")]
    NoiseSpec(String),
    #[error("report serialization: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
