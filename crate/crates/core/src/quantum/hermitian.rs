use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::QuantumError;
use crate::quantum::StateVector;
use crate::tolerance::HERMITIAN_TOL;

/// A dense conjugate-symmetric matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    inner: DMatrix<Complex64>,
}

/// Spectral decomposition with eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `i` is the unit eigenvector for `values[i]`.
    pub vectors: DMatrix<Complex64>,
}

impl HermitianMatrix {
    /// Builds from row-major entries, rejecting non-Hermitian input.
    pub fn from_rows(dimension: usize, entries: &[Complex64]) -> Result<Self, QuantumError> {
        if entries.len() != dimension * dimension || dimension == 0 {
            return Err(QuantumError::DimensionMismatch {
                expected: dimension * dimension,
                actual: entries.len(),
            });
        }
        Self::from_matrix(DMatrix::from_row_slice(dimension, dimension, entries))
    }

    pub fn from_matrix(m: DMatrix<Complex64>) -> Result<Self, QuantumError> {
        if !m.is_square() {
            return Err(QuantumError::DimensionMismatch {
                expected: m.nrows(),
                actual: m.ncols(),
            });
        }
        let asym = max_asymmetry(&m);
        if asym > HERMITIAN_TOL {
            return Err(QuantumError::NotHermitian(asym));
        }
        Ok(Self { inner: m })
    }

    pub fn zeros(dimension: usize) -> Self {
        Self {
            inner: DMatrix::zeros(dimension, dimension),
        }
    }

    /// `|psi><psi|`.
    pub fn projector(state: &StateVector) -> Self {
        let v = nalgebra::DVector::from_column_slice(state.amplitudes());
        Self {
            inner: &v * v.adjoint(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.inner.nrows()
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn trace(&self) -> f64 {
        self.inner.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            inner: self.inner.map(|z| z * factor),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, QuantumError> {
        self.check_same(other)?;
        Ok(Self {
            inner: &self.inner + &other.inner,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QuantumError> {
        self.check_same(other)?;
        Ok(Self {
            inner: &self.inner - &other.inner,
        })
    }

    /// `f(M) = V f(Λ) V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Self {
        let eig = hermitian_eig_unchecked(&self.inner);
        let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            eig.values.len(),
            eig.values.iter().map(|&l| Complex64::new(f(l), 0.0)),
        ));
        let m = &eig.vectors * diag * eig.vectors.adjoint();
        Self { inner: symmetrize(m) }
    }

    /// Sum of absolute eigenvalues.
    pub fn trace_norm(&self) -> f64 {
        hermitian_eig_unchecked(&self.inner)
            .values
            .iter()
            .map(|l| l.abs())
            .sum()
    }

    fn check_same(&self, other: &Self) -> Result<(), QuantumError> {
        if self.dimension() != other.dimension() {
            return Err(QuantumError::DimensionMismatch {
                expected: self.dimension(),
                actual: other.dimension(),
            });
        }
        Ok(())
    }
}

fn max_asymmetry(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

fn symmetrize(m: DMatrix<Complex64>) -> DMatrix<Complex64> {
    (&m + m.adjoint()).map(|z| z * 0.5)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn hermitian_eig(m: &HermitianMatrix) -> HermitianEigen {
    hermitian_eig_unchecked(&m.inner)
}

/// Checks Hermiticity of a raw matrix before decomposing it.
pub fn hermitian_eig_checked(m: &DMatrix<Complex64>) -> Result<HermitianEigen, QuantumError> {
    let h = HermitianMatrix::from_matrix(m.clone())?;
    Ok(hermitian_eig(&h))
}

fn hermitian_eig_unchecked(m: &DMatrix<Complex64>) -> HermitianEigen {
    let eig = symmetrize(m.clone()).symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, order[c])]);
    HermitianEigen { values, vectors }
}
