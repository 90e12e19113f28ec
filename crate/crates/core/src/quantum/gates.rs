use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::QuantumError;
use crate::quantum::StateVector;

/// The gate set needed to prepare reveal states.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H,
    X,
    Z,
    /// Controlled-NOT; qubit list is `[control, target]`.
    Cnot,
}

impl Gate {
    pub fn arity(self) -> usize {
        match self {
            Gate::Cnot => 2,
            _ => 1,
        }
    }
}

/// Applies `gate` to `qubits` (0-based, 0 = leftmost ket symbol).
pub fn apply_gate(
    state: &StateVector,
    gate: Gate,
    qubits: &[usize],
) -> Result<StateVector, QuantumError> {
    let n = state.num_qubits();
    if qubits.len() != gate.arity() {
        return Err(QuantumError::DimensionMismatch {
            expected: gate.arity(),
            actual: qubits.len(),
        });
    }
    if let Some(&index) = qubits.iter().find(|&&q| q >= n) {
        return Err(QuantumError::QubitOutOfRange {
            index,
            num_qubits: n,
        });
    }
    let bit = |q: usize| 1usize << (n - 1 - q);
    let src = state.amplitudes();
    let mut out = src.to_vec();
    match gate {
        Gate::H => {
            let m = bit(qubits[0]);
            let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
            for i in (0..src.len()).filter(|i| i & m == 0) {
                let (a0, a1) = (src[i], src[i | m]);
                out[i] = (a0 + a1) * h;
                out[i | m] = (a0 - a1) * h;
            }
        }
        Gate::X => {
            let m = bit(qubits[0]);
            for (i, slot) in out.iter_mut().enumerate() {
                *slot = src[i ^ m];
            }
        }
        Gate::Z => {
            let m = bit(qubits[0]);
            for (i, slot) in out.iter_mut().enumerate() {
                if i & m != 0 {
                    *slot = -src[i];
                }
            }
        }
        Gate::Cnot => {
            let (control, target) = (qubits[0], qubits[1]);
            if control == target {
                return Err(QuantumError::DuplicateQubits(control));
            }
            let (cm, tm) = (bit(control), bit(target));
            for (i, slot) in out.iter_mut().enumerate() {
                if i & cm != 0 {
                    *slot = src[i ^ tm];
                }
            }
        }
    }
    Ok(StateVector::from_parts(n, out))
}
