//! The initial agreement: commitment sets, reveal states and bases, and the
//! computational parent set S.

mod audit;
mod params;
mod reveal;
mod sets;

use std::sync::Arc;

pub use audit::{
    audit_params, audit_scheme, cross_set_overlap_audit, s_overlap_audit, violation_name,
    CheckResult, OverlapAudit, OverlapEntry, SOverlapEntry, SchemeAudit,
};
pub use params::{parse_mask_list, Preset, SchemeParams, MAX_N};
pub use reveal::{
    bob_reveal_state, build_reveal_agreement, circuit_inputs, stabilizer_audit, PauliMask,
    RevealAgreement, RevealBasis, RevealState, StabilizerEntry, StabilizerReport,
};
pub use sets::{build_set, build_set_s, build_sets, CommitmentSet, SetElement, SetS};

use crate::error::SchemeError;
use crate::quantum::{MeasurementBasis, StateVector};

/// Everything both parties agree on before a session: parameters, the sets
/// B_c, Bob's reveal states and completed reveal bases, and set S.
///
/// Construction completes 2^N bases of dimension 2^(2N+1), so build once
/// and share through [`SharedScheme`].
#[derive(Debug)]
pub struct CommitmentScheme {
    params: SchemeParams,
    sets: Vec<CommitmentSet>,
    agreement: RevealAgreement,
    set_s: SetS,
    computational: MeasurementBasis,
    hash: String,
}

pub type SharedScheme = Arc<CommitmentScheme>;

impl CommitmentScheme {
    pub fn new(params: SchemeParams) -> Result<Self, SchemeError> {
        let sets = build_sets(&params);
        let agreement = build_reveal_agreement(&params, &sets)?;
        let set_s = build_set_s(&params);
        let computational = MeasurementBasis::computational(params.alice_qubits());
        let hash = params.scheme_hash();
        Ok(Self {
            params,
            sets,
            agreement,
            set_s,
            computational,
            hash,
        })
    }

    pub fn shared(params: SchemeParams) -> Result<SharedScheme, SchemeError> {
        Self::new(params).map(Arc::new)
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn num_choices(&self) -> usize {
        self.params.num_choices()
    }

    pub fn sets(&self) -> &[CommitmentSet] {
        &self.sets
    }

    pub fn set(&self, choice: usize) -> &CommitmentSet {
        &self.sets[choice]
    }

    pub fn agreement(&self) -> &RevealAgreement {
        &self.agreement
    }

    pub fn set_s(&self) -> &SetS {
        &self.set_s
    }

    /// Computational basis on Alice's N+1 qubits, used for parent-S verification.
    pub fn computational_basis(&self) -> &MeasurementBasis {
        &self.computational
    }

    pub fn scheme_hash(&self) -> &str {
        &self.hash
    }

    /// Element `k` of B_c, range-checked.
    pub fn element(&self, choice: usize, k: usize) -> Result<&StateVector, SchemeError> {
        self.params.check_choice(choice)?;
        let set = &self.sets[choice];
        if k >= set.len() {
            return Err(SchemeError::ElementOutOfRange {
                index: k,
                len: set.len(),
            });
        }
        Ok(set.element(k))
    }

    pub fn reveal_state(&self, choice: usize) -> &StateVector {
        &self.agreement.basis(choice).reveal_state.state
    }

    pub fn reveal_basis(&self, choice: usize) -> &MeasurementBasis {
        &self.agreement.basis(choice).basis
    }
}
