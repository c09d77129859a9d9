//! Planning and evaluation of concatenated quantum error correction built
//! from the bit-flip and phase-flip three-qubit codes, with the five-qubit
//! perfect code as a baseline.
//!
//! Any single-qubit CPTP noise channel can be pushed through a stack of
//! codes. Each level is computed exactly: the effective logical channel of
//! level `l` is the i.i.d. physical channel of level `l + 1`. The
//! three-qubit protocol at each level is chosen from the channel's overlaps
//! with I, X, Z and Y, and the resulting plan is costed in qubits, gates and
//! a multiplicative per-gate accuracy model.
//!
//! All numeric types are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix `f64`.

pub mod channel;
pub mod code;
pub mod error;
pub mod level_map;
pub mod noise_spec;
pub mod pauli;
pub mod planner;
pub mod reference;
pub mod resources;
pub mod sample;
pub mod scalar;

pub use channel::{amplitude_damping_gamma, ComplexMatrix, PauliProjection};
pub use code::{build_protocol, CorrectionTable, Family, Protocol, ProtocolId, StabilizerCode, Syndrome};
pub use error::{Error, Result};
pub use level_map::{
    effective_channel_exact, five_qubit_level_map, pauli_enumeration_oracle, pauli_level_map, ExactLevelMap,
};
pub use noise_spec::NoiseSpec;
pub use pauli::{Pauli, PauliString, Phase};
pub use planner::{classify, plan, plan_with_sequence};
pub use resources::{accuracy_exponent, accuracy_rate, gate_totals, qubit_count, realized_fidelity_report, GateCounts};
pub use scalar::Real;

pub type QubitChannel = channel::QubitChannel<f64>;
pub type PauliMixture = channel::PauliMixture<f64>;
pub type SimilarityScores = channel::SimilarityScores<f64>;
pub type LevelMapResult = level_map::LevelMapResult<f64>;
pub type ConcatPlan = planner::ConcatPlan<f64>;
pub type LevelRecord = planner::LevelRecord<f64>;
pub type ResourceReport = resources::ResourceReport<f64>;
pub type LevelResources = resources::LevelResources<f64>;

pub type QubitChannel32 = channel::QubitChannel<f32>;
pub type PauliMixture32 = channel::PauliMixture<f32>;
