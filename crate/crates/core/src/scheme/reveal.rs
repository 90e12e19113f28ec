use serde::Serialize;

use crate::error::SchemeError;
use crate::quantum::{apply_gate, complete_basis, format_bits, Gate, MeasurementBasis, StateVector};
use crate::scheme::{CommitmentSet, SchemeParams};
use crate::tolerance::NORM_TOL;

/// Bob's N-qubit reveal state for one choice.
#[derive(Clone, Debug, PartialEq)]
pub struct RevealState {
    pub choice: usize,
    pub state: StateVector,
}

/// Prepares G_c: load the big-endian bits of `c`, Hadamard qubit 1, then
/// fan out with CNOTs from qubit 1 to every other qubit.
///
/// The result is `(|0,c2..cN> + (-1)^c1 |1,!c2..!cN>)/sqrt(2)`.
pub fn bob_reveal_state(params: &SchemeParams, choice: usize) -> Result<RevealState, SchemeError> {
    params.check_choice(choice)?;
    let n = params.bob_qubits();
    let mut state = StateVector::basis_index(n, choice);
    state = apply_gate(&state, Gate::H, &[0])?;
    for target in 1..n {
        state = apply_gate(&state, Gate::Cnot, &[0, target])?;
    }
    Ok(RevealState { choice, state })
}

/// Verification data for one choice: the valid products `e_k ⊗ G_c` and the
/// completed basis whose outcomes `0..2^N` are those products in order.
#[derive(Clone, Debug)]
pub struct RevealBasis {
    pub choice: usize,
    pub reveal_state: RevealState,
    pub valid_products: Vec<StateVector>,
    pub basis: MeasurementBasis,
}

/// The reveal half of the initial agreement, indexed by choice.
#[derive(Clone, Debug)]
pub struct RevealAgreement {
    pub per_choice: Vec<RevealBasis>,
}

impl RevealAgreement {
    pub fn basis(&self, choice: usize) -> &RevealBasis {
        &self.per_choice[choice]
    }
}

pub fn build_reveal_agreement(
    params: &SchemeParams,
    sets: &[CommitmentSet],
) -> Result<RevealAgreement, SchemeError> {
    let dim = 1usize << (params.alice_qubits() + params.bob_qubits());
    let per_choice = sets
        .iter()
        .map(|set| {
            let reveal_state = bob_reveal_state(params, set.choice)?;
            let valid_products: Vec<StateVector> = set
                .elements
                .iter()
                .map(|e| e.state.tensor(&reveal_state.state))
                .collect();
            let basis = complete_basis(&valid_products, dim)?;
            Ok(RevealBasis {
                choice: set.choice,
                reveal_state,
                valid_products,
                basis,
            })
        })
        .collect::<Result<Vec<_>, SchemeError>>()?;
    Ok(RevealAgreement { per_choice })
}

/// A Pauli string built from `X^x_mask Z^z_mask` on Bob's qubits (bit
/// `N-1-q` of a mask addresses qubit `q`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PauliMask {
    pub x_mask: usize,
    pub z_mask: usize,
}

impl PauliMask {
    pub fn label(&self, n: usize) -> String {
        (0..n)
            .map(|q| {
                let bit = 1 << (n - 1 - q);
                match (self.x_mask & bit != 0, self.z_mask & bit != 0) {
                    (false, false) => 'I',
                    (true, false) => 'X',
                    (false, true) => 'Z',
                    (true, true) => 'Y',
                }
            })
            .collect()
    }

    /// `<psi| P |psi>` for a Pauli string without phase (Y written as XZ).
    pub fn expectation(&self, state: &StateVector) -> num_complex::Complex64 {
        let amps = state.amplitudes();
        amps.iter()
            .enumerate()
            .map(|(i, a)| {
                // P|i> = (-1)^{popcount(i & z)} |i ^ x>
                let sign = if (i & self.z_mask).count_ones() % 2 == 1 {
                    -1.0
                } else {
                    1.0
                };
                amps[i ^ self.x_mask].conj() * a * sign
            })
            .sum()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerEntry {
    pub operator: String,
    pub mask: PauliMask,
    /// Whether this operator should stabilize the state (X^N or even-weight Z).
    pub expected_stabilizer: bool,
    pub expectation: f64,
    /// ±1 when the state is an eigenvector, `None` otherwise.
    pub eigenvalue: Option<i8>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilizerReport {
    pub choice: usize,
    pub entries: Vec<StabilizerEntry>,
}

impl StabilizerReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.passed)
    }
}

/// Checks X^⊗N and every even-weight Z-mask are eigenoperators of G_c, and
/// that odd-weight Z-masks average to zero.
pub fn stabilizer_audit(state: &RevealState) -> StabilizerReport {
    let n = state.state.num_qubits();
    let all = (1usize << n) - 1;
    let mut masks = vec![(
        PauliMask {
            x_mask: all,
            z_mask: 0,
        },
        true,
    )];
    masks.extend((0..=all).map(|z| {
        (
            PauliMask {
                x_mask: 0,
                z_mask: z,
            },
            z.count_ones() % 2 == 0,
        )
    }));
    let entries = masks
        .into_iter()
        .map(|(mask, expected_stabilizer)| {
            let expectation = mask.expectation(&state.state).re;
            let eigen = (expectation.abs() - 1.0).abs() < NORM_TOL;
            let eigenvalue = eigen.then(|| if expectation > 0.0 { 1 } else { -1 });
            let passed = if expected_stabilizer {
                eigen
            } else {
                expectation.abs() < NORM_TOL
            };
            StabilizerEntry {
                operator: mask.label(n),
                mask,
                expected_stabilizer,
                expectation,
                eigenvalue,
                passed,
            }
        })
        .collect();
    StabilizerReport {
        choice: state.choice,
        entries,
    }
}

/// Bits of `choice` as fed to the preparation circuit, e.g. `101`.
pub fn circuit_inputs(params: &SchemeParams, choice: usize) -> String {
    format_bits(choice, params.bob_qubits())
}
