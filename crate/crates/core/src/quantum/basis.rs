use num_complex::Complex64;
use rand::Rng;

use crate::error::QuantumError;
use crate::quantum::StateVector;
use crate::tolerance::{COMPLETION_CUTOFF, NORM_TOL, ORTHO_TOL};

/// A complete orthonormal measurement basis with a designated set of
/// "valid" outcome indices.
///
/// Each vector's non-zero entries are cached so Born probabilities cost
/// `O(total support)` rather than `O(dim^2)`; the bases built by the
/// commitment scheme are very sparse.
#[derive(Clone, Debug)]
pub struct MeasurementBasis {
    dimension: usize,
    vectors: Vec<StateVector>,
    sparse: Vec<Vec<(usize, Complex64)>>,
    valid_outcomes: Vec<usize>,
}

impl MeasurementBasis {
    /// Wraps a full set of vectors after checking the basis invariants.
    pub fn new(vectors: Vec<StateVector>, valid_outcomes: Vec<usize>) -> Result<Self, QuantumError> {
        let dimension = vectors.first().map(StateVector::dimension).unwrap_or(0);
        if vectors.len() != dimension || dimension == 0 {
            return Err(QuantumError::DimensionMismatch {
                expected: dimension,
                actual: vectors.len(),
            });
        }
        check_orthonormal(&vectors, dimension)?;
        Ok(Self::from_checked(vectors, valid_outcomes))
    }

    /// The computational basis on `num_qubits` qubits, every outcome valid.
    pub fn computational(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        let vectors = (0..dim)
            .map(|i| StateVector::basis_index(num_qubits, i))
            .collect();
        Self::from_checked(vectors, (0..dim).collect())
    }

    fn from_checked(vectors: Vec<StateVector>, mut valid_outcomes: Vec<usize>) -> Self {
        valid_outcomes.sort_unstable();
        valid_outcomes.dedup();
        let sparse = vectors
            .iter()
            .map(|v| {
                v.amplitudes()
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| **a != Complex64::ZERO)
                    .map(|(i, a)| (i, *a))
                    .collect()
            })
            .collect();
        Self {
            dimension: vectors.first().map(StateVector::dimension).unwrap_or(0),
            vectors,
            sparse,
            valid_outcomes,
        }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vectors(&self) -> &[StateVector] {
        &self.vectors
    }

    pub fn vector(&self, index: usize) -> &StateVector {
        &self.vectors[index]
    }

    pub fn valid_outcomes(&self) -> &[usize] {
        &self.valid_outcomes
    }

    pub fn is_valid(&self, outcome: usize) -> bool {
        self.valid_outcomes.binary_search(&outcome).is_ok()
    }

    /// Replaces the valid-outcome set; indices must be in range.
    pub fn with_valid_outcomes(mut self, valid: Vec<usize>) -> Result<Self, QuantumError> {
        if let Some(&bad) = valid.iter().find(|&&v| v >= self.dimension) {
            return Err(QuantumError::DimensionMismatch {
                expected: self.dimension,
                actual: bad,
            });
        }
        let mut valid = valid;
        valid.sort_unstable();
        valid.dedup();
        self.valid_outcomes = valid;
        Ok(self)
    }

    /// Exact Born probabilities `|<b_k|state>|^2`.
    pub fn born_distribution(&self, state: &StateVector) -> Result<Vec<f64>, QuantumError> {
        self.check_dim(state)?;
        let amps = state.amplitudes();
        Ok(self
            .sparse
            .iter()
            .map(|entries| {
                entries
                    .iter()
                    .map(|(i, b)| b.conj() * amps[*i])
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .collect())
    }

    /// Total probability of landing on a valid outcome.
    pub fn valid_mass(&self, state: &StateVector) -> Result<f64, QuantumError> {
        self.check_dim(state)?;
        let amps = state.amplitudes();
        Ok(self
            .valid_outcomes
            .iter()
            .map(|&k| {
                self.sparse[k]
                    .iter()
                    .map(|(i, b)| b.conj() * amps[*i])
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum())
    }

    /// Samples an outcome index with Born probabilities.
    pub fn measure<R: Rng + ?Sized>(
        &self,
        state: &StateVector,
        rng: &mut R,
    ) -> Result<usize, QuantumError> {
        let probs = self.born_distribution(state)?;
        Ok(sample_index(&probs, rng))
    }

    fn check_dim(&self, state: &StateVector) -> Result<(), QuantumError> {
        if state.dimension() != self.dimension {
            return Err(QuantumError::DimensionMismatch {
                expected: self.dimension,
                actual: state.dimension(),
            });
        }
        Ok(())
    }
}

/// Draws an index from a probability vector by inverse-CDF sampling.
pub fn sample_index<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    let mut last_nonzero = 0;
    for (k, &p) in probs.iter().enumerate() {
        if p > 0.0 {
            last_nonzero = k;
        }
        acc += p;
        if u < acc {
            return k;
        }
    }
    // rounding left a sliver of mass past the end
    last_nonzero
}

/// Exact Born probabilities of `state` in `basis`.
pub fn born_distribution(
    state: &StateVector,
    basis: &MeasurementBasis,
) -> Result<Vec<f64>, QuantumError> {
    basis.born_distribution(state)
}

/// Samples a measurement outcome of `state` in `basis`.
pub fn measure<R: Rng + ?Sized>(
    state: &StateVector,
    basis: &MeasurementBasis,
    rng: &mut R,
) -> Result<usize, QuantumError> {
    basis.measure(state, rng)
}

fn check_orthonormal(vectors: &[StateVector], dimension: usize) -> Result<(), QuantumError> {
    for (i, v) in vectors.iter().enumerate() {
        if v.dimension() != dimension {
            return Err(QuantumError::DimensionMismatch {
                expected: dimension,
                actual: v.dimension(),
            });
        }
        let n2 = v.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::NotOrthonormal(format!(
                "vector {i} has squared norm {n2}"
            )));
        }
    }
    for i in 0..vectors.len() {
        let si = vectors[i].support();
        for j in i + 1..vectors.len() {
            let ov: Complex64 = si
                .iter()
                .map(|&k| vectors[i].amplitude(k).conj() * vectors[j].amplitude(k))
                .sum();
            if ov.norm() >= ORTHO_TOL {
                return Err(QuantumError::NotOrthonormal(format!(
                    "vectors {i} and {j} overlap with modulus {}",
                    ov.norm()
                )));
            }
        }
    }
    Ok(())
}

/// Extends an orthonormal family to a full basis of the given dimension.
///
/// The input vectors keep their order and positions; they become the valid
/// outcomes. Completion runs Gram-Schmidt over computational basis vectors
/// in ascending index order and discards residuals with norm below
/// [`COMPLETION_CUTOFF`], so the result is deterministic.
pub fn complete_basis(
    partial: &[StateVector],
    dimension: usize,
) -> Result<MeasurementBasis, QuantumError> {
    if dimension < 2 || !dimension.is_power_of_two() {
        return Err(QuantumError::NotPowerOfTwo { len: dimension });
    }
    if partial.len() > dimension {
        return Err(QuantumError::NotOrthonormal(format!(
            "{} vectors cannot be orthonormal in dimension {dimension}",
            partial.len()
        )));
    }
    check_orthonormal(partial, dimension)?;
    let num_qubits = dimension.trailing_zeros() as usize;

    let mut vectors: Vec<StateVector> = partial.to_vec();
    // column view: for each coordinate, which basis vectors touch it
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); dimension];
    for (idx, v) in vectors.iter().enumerate() {
        for k in v.support() {
            touching[k].push(idx);
        }
    }

    for j in 0..dimension {
        if vectors.len() == dimension {
            break;
        }
        let mut residual = vec![Complex64::ZERO; dimension];
        residual[j] = Complex64::ONE;
        // first pass: <b|e_j> = conj(b[j]), only vectors touching j contribute
        for &idx in &touching[j] {
            let coeff = vectors[idx].amplitude(j).conj();
            for (k, b) in vectors[idx].amplitudes().iter().enumerate() {
                if *b != Complex64::ZERO {
                    residual[k] -= coeff * b;
                }
            }
        }
        // second pass against everything sharing the residual's support
        let support: Vec<usize> = (0..dimension)
            .filter(|&k| residual[k] != Complex64::ZERO)
            .collect();
        let mut seen = vec![false; vectors.len()];
        let mut candidates = Vec::new();
        for &k in &support {
            for &idx in &touching[k] {
                if !seen[idx] {
                    seen[idx] = true;
                    candidates.push(idx);
                }
            }
        }
        for idx in candidates {
            let b = vectors[idx].amplitudes();
            let coeff: Complex64 = support.iter().map(|&k| b[k].conj() * residual[k]).sum();
            if coeff != Complex64::ZERO {
                for (k, bk) in b.iter().enumerate() {
                    if *bk != Complex64::ZERO {
                        residual[k] -= coeff * bk;
                    }
                }
            }
        }
        let norm = residual.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < COMPLETION_CUTOFF {
            continue;
        }
        for a in residual.iter_mut() {
            *a /= norm;
        }
        let v = StateVector::from_parts(num_qubits, residual);
        let idx = vectors.len();
        for k in v.support() {
            touching[k].push(idx);
        }
        vectors.push(v);
    }
    debug_assert_eq!(vectors.len(), dimension);
    let valid = (0..partial.len()).collect();
    Ok(MeasurementBasis::from_checked(vectors, valid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pair(x: &str, y: &str) -> StateVector {
        StateVector::equal_superposition_pair(x, y).unwrap()
    }

    fn minus() -> StateVector {
        StateVector::from_amplitudes(vec![
            std::f64::consts::FRAC_1_SQRT_2.into(),
            (-std::f64::consts::FRAC_1_SQRT_2).into(),
        ])
        .unwrap()
    }

    #[test]
    fn empty_completion_is_computational() {
        let b = complete_basis(&[], 4).unwrap();
        for (i, v) in b.vectors().iter().enumerate() {
            assert_eq!(v, &StateVector::basis_index(2, i));
        }
        assert!(b.valid_outcomes().is_empty());
    }

    #[test]
    fn single_zero_completes_with_one() {
        let zero = StateVector::basis_state("0").unwrap();
        let b = complete_basis(&[zero.clone()], 2).unwrap();
        assert_eq!(b.vector(0), &zero);
        assert_eq!(b.vector(1), &StateVector::basis_state("1").unwrap());
        assert_eq!(b.valid_outcomes(), &[0]);
    }

    #[test]
    fn non_orthonormal_input_is_rejected() {
        let a = pair("00", "01");
        let b = pair("00", "10");
        assert!(matches!(
            complete_basis(&[a, b], 4),
            Err(QuantumError::NotOrthonormal(_))
        ));
        let unnormalized = StateVector::from_parts(1, vec![Complex64::ONE, Complex64::ONE]);
        assert!(complete_basis(&[unnormalized], 2).is_err());
    }

    #[test]
    fn born_distribution_indicator_and_uniform() {
        let b = MeasurementBasis::computational(2);
        let p = b
            .born_distribution(&StateVector::basis_state("10").unwrap())
            .unwrap();
        assert_eq!(p, vec![0.0, 0.0, 1.0, 0.0]);
        let b1 = MeasurementBasis::computational(1);
        let p = b1.born_distribution(&pair("0", "1")).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-15 && (p[1] - 0.5).abs() < 1e-15);
        assert!(b1.born_distribution(&pair("00", "11")).is_err());
    }

    #[test]
    fn hadamard_basis_measurement_is_fair() {
        let basis = MeasurementBasis::new(vec![pair("0", "1"), minus()], vec![0]).unwrap();
        let zero = StateVector::basis_state("0").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let trials = 100_000;
        let hits = (0..trials)
            .filter(|_| basis.measure(&zero, &mut rng).unwrap() == 0)
            .count();
        let sigma = (0.25f64 / trials as f64).sqrt();
        assert!((hits as f64 / trials as f64 - 0.5).abs() < 3.0 * sigma);
    }

    #[test]
    fn measure_is_deterministic_per_seed() {
        let basis = MeasurementBasis::computational(3);
        let s = pair("000", "111");
        let run = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..32)
                .map(|_| basis.measure(&s, &mut rng).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(run(3), run(3));
    }

    #[test]
    fn sample_index_never_picks_zero_mass_tail() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let k = sample_index(&[0.5, 0.5 - 1e-17, 0.0], &mut rng);
            assert!(k < 2);
        }
    }
}
