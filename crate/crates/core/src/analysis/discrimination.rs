use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{AnalysisError, QuantumError};
use crate::quantum::{HermitianMatrix, StateVector};
use crate::scheme::CommitmentScheme;
use crate::tolerance::SUPPORT_CUTOFF;

/// A labelled density operator.
#[derive(Clone, Debug)]
pub struct EnsembleMixture {
    pub choice: usize,
    pub rho: HermitianMatrix,
}

impl EnsembleMixture {
    /// Uniform mixture of projectors onto `states`.
    pub fn from_states(choice: usize, states: &[StateVector]) -> Result<Self, QuantumError> {
        let first = states.first().ok_or(QuantumError::DimensionMismatch {
            expected: 1,
            actual: 0,
        })?;
        let mut rho = HermitianMatrix::zeros(first.dimension());
        for s in states {
            rho = rho.add(&HermitianMatrix::projector(s))?;
        }
        Ok(Self {
            choice,
            rho: rho.scaled(1.0 / states.len() as f64),
        })
    }

    /// `rho_c`: uniform mixture over the elements of `B_c`.
    pub fn for_choice(scheme: &CommitmentScheme, choice: usize) -> Self {
        let states: Vec<StateVector> = scheme
            .set(choice)
            .elements
            .iter()
            .map(|e| e.state.clone())
            .collect();
        Self::from_states(choice, &states).expect("sets are non-empty")
    }

    pub fn dimension(&self) -> usize {
        self.rho.dimension()
    }
}

/// Every choice's mixture.
pub fn scheme_ensembles(scheme: &CommitmentScheme) -> Vec<EnsembleMixture> {
    (0..scheme.num_choices())
        .map(|c| EnsembleMixture::for_choice(scheme, c))
        .collect()
}

/// Optimal two-hypothesis success with uniform priors:
/// `1/2 + ||rho1 - rho2||_1 / 4`.
pub fn helstrom_bound(
    rho1: &EnsembleMixture,
    rho2: &EnsembleMixture,
) -> Result<f64, AnalysisError> {
    helstrom_bound_with_priors(0.5, rho1, rho2)
}

/// `1/2 + ||p1 rho1 - (1-p1) rho2||_1 / 2`.
pub fn helstrom_bound_with_priors(
    p1: f64,
    rho1: &EnsembleMixture,
    rho2: &EnsembleMixture,
) -> Result<f64, AnalysisError> {
    if !(0.0..=1.0).contains(&p1) {
        return Err(AnalysisError::ProbabilityOutOfRange(p1));
    }
    let diff = rho1.rho.scaled(p1).sub(&rho2.rho.scaled(1.0 - p1))?;
    Ok(0.5 + 0.5 * diff.trace_norm())
}

/// Success probability of the square-root (pretty-good) measurement
/// `E_i = S p_i rho_i S`, `S = rho_avg^{-1/2}` on its support.
pub fn pgm_success(ensembles: &[EnsembleMixture], priors: &[f64]) -> Result<f64, AnalysisError> {
    if ensembles.len() < 2 {
        return Err(AnalysisError::TooFewEnsembles(ensembles.len()));
    }
    if priors.len() != ensembles.len() {
        return Err(QuantumError::DimensionMismatch {
            expected: ensembles.len(),
            actual: priors.len(),
        }
        .into());
    }
    let sum: f64 = priors.iter().sum();
    if priors.iter().any(|&p| p < 0.0) || (sum - 1.0).abs() > 1e-9 {
        return Err(AnalysisError::PriorsNotNormalized(sum));
    }
    let dim = ensembles[0].dimension();
    let mut avg = HermitianMatrix::zeros(dim);
    for (e, &p) in ensembles.iter().zip(priors) {
        avg = avg.add(&e.rho.scaled(p))?;
    }
    let inv_sqrt = avg.map_spectrum(|l| {
        if l.abs() < SUPPORT_CUTOFF {
            0.0
        } else {
            1.0 / l.max(SUPPORT_CUTOFF).sqrt()
        }
    });
    let s = inv_sqrt.as_matrix();
    let mut success = 0.0;
    for (e, &p) in ensembles.iter().zip(priors) {
        let r = e.rho.as_matrix();
        let povm: DMatrix<Complex64> = s * r * s;
        success += p * p * (r * povm).trace().re;
    }
    Ok(success)
}
