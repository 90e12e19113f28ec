//! Dense statevector engine.

mod basis;
mod gates;
mod hermitian;
mod state;

pub use basis::{born_distribution, complete_basis, measure, sample_index, MeasurementBasis};
pub use gates::{apply_gate, Gate};
pub use hermitian::{hermitian_eig, hermitian_eig_checked, HermitianEigen, HermitianMatrix};
pub use state::{BasisIndex, StateVector};

pub(crate) use state::format_bits;
