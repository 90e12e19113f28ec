use thiserror::Error;

/// Errors raised by the statevector engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuantumError {
    #[error("bit string must be non-empty and contain only '0' and '1', got {0:?}")]
    InvalidBits(String),
    #[error("superposition pair is degenerate: both terms are |{0}>")]
    DegeneratePair(String),
    #[error("bit strings have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("qubit index {index} out of range for {num_qubits} qubits")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("CNOT control and target must differ (both {0})")]
    DuplicateQubits(usize),
    #[error("vectors are not orthonormal: {0}")]
    NotOrthonormal(String),
    #[error("matrix is not Hermitian (max asymmetry {0:e})")]
    NotHermitian(f64),
    #[error("amplitude vector length {len} is not a power of two")]
    NotPowerOfTwo { len: usize },
    #[error("state is not normalized (squared norm {0})")]
    NotNormalized(f64),
    #[error("malformed state serialization: {0}")]
    Parse(String),
    #[error("amplitude count mismatch: header declares {declared} qubits ({expected} amplitudes), found {found}")]
    AmplitudeCount {
        declared: usize,
        expected: usize,
        found: usize,
    },
}

/// Errors raised while building or validating a commitment scheme.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemeError {
    #[error("N must lie in 1..=4, got {0}")]
    UnsupportedN(usize),
    #[error("expected {expected} masks for N={n}, got {actual}")]
    MaskCount {
        n: usize,
        expected: usize,
        actual: usize,
    },
    #[error("mask for choice {0} is zero")]
    ZeroMask(usize),
    #[error("mask {mask:#x} for choice {choice} does not fit in {bits} bits")]
    MaskTooWide { choice: usize, mask: u32, bits: usize },
    #[error("mask {mask:#x} is assigned to both choice {first} and choice {second}")]
    DuplicateMask { mask: u32, first: usize, second: usize },
    #[error("choice {choice} out of range (2^N = {choices})")]
    ChoiceOutOfRange { choice: usize, choices: usize },
    #[error("element index {index} out of range ({len} elements)")]
    ElementOutOfRange { index: usize, len: usize },
    #[error("unknown preset {0:?}")]
    UnknownPreset(String),
    #[error("malformed scheme descriptor: {0}")]
    Descriptor(String),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}

/// Errors raised by the protocol state machine, wire codec and transports.
#[derive(Debug, Error)]
pub enum ProtocolError {
    #[error("operation {op} not allowed in phase {phase:?}")]
    WrongPhase {
        op: &'static str,
        phase: crate::protocol::Phase,
    },
    #[error("framing error: {0}")]
    Framing(String),
    #[error("unsupported wire version {0}")]
    Version(u64),
    #[error("scheme hash mismatch: local {local}, remote {remote}")]
    SchemeMismatch { local: String, remote: String },
    #[error("unexpected message: expected {expected}, got {got}")]
    UnexpectedMessage { expected: &'static str, got: String },
    #[error("transport failure: {0}")]
    Transport(String),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors raised by the security-analysis battery.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("claimed choice equals the committed choice ({0}); not a cheat")]
    IdenticalChoices(usize),
    #[error("block count must be at least 1")]
    ZeroBlocks,
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("priors must be non-negative and sum to 1 (sum {0})")]
    PriorsNotNormalized(f64),
    #[error("need at least two ensembles, got {0}")]
    TooFewEnsembles(usize),
    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Quantum(#[from] QuantumError),
}
