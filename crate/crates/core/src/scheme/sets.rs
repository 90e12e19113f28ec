use crate::quantum::StateVector;
use crate::scheme::SchemeParams;

/// One element of a commitment set: `(|x> + |x ^ mask>)/sqrt(2)` with
/// `x` the smaller of the two indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SetElement {
    pub representative: usize,
    pub partner: usize,
    pub state: StateVector,
}

/// The 2^N mutually orthogonal (N+1)-qubit states Alice may send for a
/// given choice.
#[derive(Clone, Debug, PartialEq)]
pub struct CommitmentSet {
    pub choice: usize,
    pub mask: u32,
    pub elements: Vec<SetElement>,
}

impl CommitmentSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, k: usize) -> &StateVector {
        &self.elements[k].state
    }

    /// Index of the element whose pair contains basis index `x`.
    pub fn element_containing(&self, x: usize) -> Option<usize> {
        self.elements
            .iter()
            .position(|e| e.representative == x || e.partner == x)
    }
}

/// Builds B_c for every choice, elements ordered by ascending representative.
pub fn build_sets(params: &SchemeParams) -> Vec<CommitmentSet> {
    (0..params.num_choices())
        .map(|c| build_set(params, c))
        .collect()
}

pub fn build_set(params: &SchemeParams, choice: usize) -> CommitmentSet {
    let qubits = params.alice_qubits();
    let mask = params.mask(choice) as usize;
    let elements = (0..1usize << qubits)
        .filter(|&x| x < x ^ mask)
        .map(|x| SetElement {
            representative: x,
            partner: x ^ mask,
            state: StateVector::pair_from_indices(qubits, x, x ^ mask),
        })
        .collect();
    CommitmentSet {
        choice,
        mask: params.mask(choice),
        elements,
    }
}

/// The reduced-qubit variant's parent set: all (N+1)-qubit computational
/// basis states, ascending.
#[derive(Clone, Debug, PartialEq)]
pub struct SetS {
    pub elements: Vec<StateVector>,
}

impl SetS {
    /// Basis index bound to choice `c`; choices occupy indices `0..2^N`.
    pub fn bound_index(choice: usize) -> usize {
        choice
    }

    /// Inverse of [`SetS::bound_index`] for measured outcomes.
    pub fn choice_for_outcome(outcome: usize, num_choices: usize) -> Option<usize> {
        (outcome < num_choices).then_some(outcome)
    }

    pub fn bound_state(&self, choice: usize) -> &StateVector {
        &self.elements[Self::bound_index(choice)]
    }
}

pub fn build_set_s(params: &SchemeParams) -> SetS {
    let qubits = params.alice_qubits();
    SetS {
        elements: (0..1usize << qubits)
            .map(|i| StateVector::basis_index(qubits, i))
            .collect(),
    }
}
