//! One-way quantum bit commitment with classically correlated product
//! states.
//!
//! Alice encodes one of 2^N choices as an (N+1)-qubit two-term superposition
//! drawn from a set `B_c`; sets for different choices overlap, so Bob cannot
//! read the choice off the state. At reveal time Bob appends an N-qubit state
//! `G_c` and measures in a basis where the honest products are orthogonal.
//!
//! The crate is split into:
//! - [`quantum`]: dense statevectors, gates, basis completion, Born sampling
//!   and Hermitian eigendecomposition.
//! - [`scheme`]: the commitment sets, reveal states and bases.
//! - [`protocol`]: the two-party session state machine, wire format and
//!   transports.
//! - [`analysis`]: binding and concealment quantification.

pub mod analysis;
pub mod error;
pub mod protocol;
pub mod quantum;
pub mod rng;
pub mod scheme;
pub mod tolerance;

pub use error::{AnalysisError, ProtocolError, QuantumError, SchemeError};
pub use num_complex::Complex64;
pub use quantum::{HermitianMatrix, MeasurementBasis, StateVector};
pub use scheme::{CommitmentScheme, Preset, SchemeParams, SharedScheme};
