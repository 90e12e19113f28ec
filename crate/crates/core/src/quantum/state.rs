use std::fmt;

use num_complex::Complex64;

use crate::error::QuantumError;
use crate::tolerance::NORM_TOL;

/// Dense statevector over the computational basis of `num_qubits` qubits.
///
/// Qubit ordering is big-endian: the leftmost symbol of a ket (qubit 1 in
/// the usual subscript notation, index 0 in this API) is the most
/// significant bit of the amplitude index. `|110>` therefore lives at
/// index 6.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

/// A computational basis label, stored as its bit string.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    bits: String,
}

impl BasisIndex {
    pub fn parse(bits: &str) -> Result<Self, QuantumError> {
        if bits.is_empty() || !bits.bytes().all(|b| b == b'0' || b == b'1') {
            return Err(QuantumError::InvalidBits(bits.to_owned()));
        }
        if bits.len() > usize::BITS as usize - 1 {
            return Err(QuantumError::InvalidBits(bits.to_owned()));
        }
        Ok(Self {
            bits: bits.to_owned(),
        })
    }

    pub fn from_index(num_qubits: usize, index: usize) -> Self {
        Self {
            bits: format_bits(index, num_qubits),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.bits.len()
    }

    /// Amplitude index, leftmost bit most significant.
    pub fn index(&self) -> usize {
        self.bits
            .bytes()
            .fold(0usize, |acc, b| (acc << 1) | usize::from(b == b'1'))
    }

    pub fn as_str(&self) -> &str {
        &self.bits
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.bits)
    }
}

pub(crate) fn format_bits(index: usize, width: usize) -> String {
    (0..width)
        .map(|q| {
            if (index >> (width - 1 - q)) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

impl StateVector {
    /// Computational basis state `|bits>`.
    pub fn basis_state(bits: &str) -> Result<Self, QuantumError> {
        let label = BasisIndex::parse(bits)?;
        Ok(Self::basis_index(label.num_qubits(), label.index()))
    }

    /// Computational basis state with amplitude 1 at `index`.
    ///
    /// Panics if `index >= 2^num_qubits` or `num_qubits == 0`.
    pub fn basis_index(num_qubits: usize, index: usize) -> Self {
        assert!(num_qubits > 0, "a state needs at least one qubit");
        let dim = 1usize << num_qubits;
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut amplitudes = vec![Complex64::ZERO; dim];
        amplitudes[index] = Complex64::ONE;
        Self {
            num_qubits,
            amplitudes,
        }
    }

    /// `(|x> + |y>)/sqrt(2)` for two distinct bit strings of equal length.
    pub fn equal_superposition_pair(x: &str, y: &str) -> Result<Self, QuantumError> {
        let a = BasisIndex::parse(x)?;
        let b = BasisIndex::parse(y)?;
        if a.num_qubits() != b.num_qubits() {
            return Err(QuantumError::LengthMismatch(a.num_qubits(), b.num_qubits()));
        }
        if a == b {
            return Err(QuantumError::DegeneratePair(x.to_owned()));
        }
        Ok(Self::pair_from_indices(a.num_qubits(), a.index(), b.index()))
    }

    /// `(|x> + |y>)/sqrt(2)` by integer index; `x != y` is the caller's job.
    pub(crate) fn pair_from_indices(num_qubits: usize, x: usize, y: usize) -> Self {
        debug_assert_ne!(x, y);
        let mut amplitudes = vec![Complex64::ZERO; 1usize << num_qubits];
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amplitudes[x] = h;
        amplitudes[y] = h;
        Self {
            num_qubits,
            amplitudes,
        }
    }

    /// Builds a state from raw amplitudes, checking length and normalization.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, QuantumError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QuantumError::NotPowerOfTwo { len });
        }
        let state = Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let n2 = state.norm_sqr();
        if (n2 - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::NotNormalized(n2));
        }
        Ok(state)
    }

    /// Rescales arbitrary non-zero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self, QuantumError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(QuantumError::NotPowerOfTwo { len });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < NORM_TOL {
            return Err(QuantumError::NotNormalized(norm * norm));
        }
        Self::from_amplitudes(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    /// Unchecked construction for internal routines that preserve the norm.
    pub(crate) fn from_parts(num_qubits: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), 1usize << num_qubits);
        Self {
            num_qubits,
            amplitudes,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Kronecker product; `self` supplies the leading (most significant) qubits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dimension() * other.dimension());
        for a in &self.amplitudes {
            amplitudes.extend(other.amplitudes.iter().map(|b| a * b));
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Complex64, QuantumError> {
        if self.dimension() != other.dimension() {
            return Err(QuantumError::DimensionMismatch {
                expected: self.dimension(),
                actual: other.dimension(),
            });
        }
        Ok(inner_raw(&self.amplitudes, &other.amplitudes))
    }

    /// Largest absolute amplitude difference, or infinity on dimension mismatch.
    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        if self.dimension() != other.dimension() {
            return f64::INFINITY;
        }
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Indices with a non-zero amplitude.
    pub fn support(&self) -> Vec<usize> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != Complex64::ZERO)
            .map(|(i, _)| i)
            .collect()
    }

    /// Text serialization: a `qubits=<n>` header, then one `re im` line per
    /// amplitude with 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits={}\n", self.num_qubits);
        for a in &self.amplitudes {
            out.push_str(&format!("{:.16e} {:.16e}\n", a.re, a.im));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, QuantumError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| QuantumError::Parse("empty input".into()))?;
        let declared: usize = header
            .trim()
            .strip_prefix("qubits=")
            .ok_or_else(|| QuantumError::Parse(format!("bad header {header:?}")))?
            .parse()
            .map_err(|e| QuantumError::Parse(format!("bad qubit count: {e}")))?;
        if declared == 0 || declared >= usize::BITS as usize - 1 {
            return Err(QuantumError::Parse(format!("unsupported qubit count {declared}")));
        }
        let mut amplitudes = Vec::new();
        for line in lines {
            let mut parts = line.split_whitespace();
            let (Some(re), Some(im), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(QuantumError::Parse(format!("bad amplitude line {line:?}")));
            };
            let re: f64 = re
                .parse()
                .map_err(|e| QuantumError::Parse(format!("{re:?}: {e}")))?;
            let im: f64 = im
                .parse()
                .map_err(|e| QuantumError::Parse(format!("{im:?}: {e}")))?;
            amplitudes.push(Complex64::new(re, im));
        }
        let expected = 1usize << declared;
        if amplitudes.len() != expected {
            return Err(QuantumError::AmplitudeCount {
                declared,
                expected,
                found: amplitudes.len(),
            });
        }
        Self::from_amplitudes(amplitudes)
    }

    /// Human-readable ket expansion, e.g. `0.5|010> - 0.5|011>`.
    pub fn ket_string(&self) -> String {
        let mut terms = Vec::new();
        for (i, a) in self.amplitudes.iter().enumerate() {
            if a.norm() < 1e-12 {
                continue;
            }
            let bits = format_bits(i, self.num_qubits);
            let coeff = if a.im.abs() < 1e-12 {
                format!("{:.4}", a.re)
            } else {
                format!("({:.4}{:+.4}i)", a.re, a.im)
            };
            terms.push(format!("{coeff}|{bits}>"));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ").replace("+ -", "- ")
        }
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ket_string())
    }
}

pub(crate) fn inner_raw(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn basis_states_are_big_endian() {
        assert_eq!(
            StateVector::basis_state("0").unwrap().amplitudes(),
            &[c(1.0), c(0.0)]
        );
        let s = StateVector::basis_state("01").unwrap();
        assert_eq!(s.dimension(), 4);
        assert_eq!(s.amplitude(1), c(1.0));
        let s = StateVector::basis_state("110").unwrap();
        assert_eq!(s.dimension(), 8);
        assert_eq!(s.support(), vec![6]);
    }

    #[test]
    fn bad_bits_are_rejected() {
        assert!(StateVector::basis_state("").is_err());
        assert!(StateVector::basis_state("012").is_err());
    }

    #[test]
    fn superposition_pair_matches_table_kets() {
        let s = StateVector::equal_superposition_pair("01", "00").unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(s.amplitudes(), &[c(h), c(h), c(0.0), c(0.0)]);
        let s = StateVector::equal_superposition_pair("00", "11").unwrap();
        assert_eq!(s.support(), vec![0, 3]);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_and_ragged_pairs_fail() {
        assert_eq!(
            StateVector::equal_superposition_pair("01", "01"),
            Err(QuantumError::DegeneratePair("01".into()))
        );
        assert_eq!(
            StateVector::equal_superposition_pair("01", "1"),
            Err(QuantumError::LengthMismatch(2, 1))
        );
    }

    #[test]
    fn tensor_of_basis_states() {
        let a = StateVector::basis_state("0").unwrap();
        let b = StateVector::basis_state("1").unwrap();
        assert_eq!(a.tensor(&b), StateVector::basis_state("01").unwrap());
    }

    #[test]
    fn tensor_expands_first_table_row() {
        let alice = StateVector::equal_superposition_pair("01", "00").unwrap();
        let bob = StateVector::equal_superposition_pair("0", "1").unwrap();
        let p = alice.tensor(&bob);
        assert_eq!(p.num_qubits(), 3);
        for (i, a) in p.amplitudes().iter().enumerate() {
            let want = if [0b010, 0b000, 0b011, 0b001].contains(&i) {
                0.5
            } else {
                0.0
            };
            assert!((a - c(want)).norm() < 1e-15, "index {i}");
        }
    }

    #[test]
    fn inner_products() {
        let a = StateVector::basis_state("00").unwrap();
        let b = StateVector::basis_state("11").unwrap();
        assert_eq!(a.inner(&b).unwrap(), Complex64::ZERO);
        let x = StateVector::equal_superposition_pair("01", "00").unwrap();
        let y = StateVector::equal_superposition_pair("01", "10").unwrap();
        assert!((x.inner(&y).unwrap() - c(0.5)).norm() < 1e-15);
        assert!((x.inner(&x).unwrap() - c(1.0)).norm() < 1e-15);
        assert!(matches!(
            x.inner(&StateVector::basis_state("0").unwrap()),
            Err(QuantumError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn inner_is_conjugate_linear_in_left_argument() {
        let plus_i = StateVector::from_amplitudes(vec![
            c(std::f64::consts::FRAC_1_SQRT_2),
            Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2),
        ])
        .unwrap();
        let one = StateVector::basis_state("1").unwrap();
        let v = plus_i.inner(&one).unwrap();
        assert!((v - Complex64::new(0.0, -std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn text_round_trip_and_errors() {
        let s = StateVector::equal_superposition_pair("01", "10").unwrap();
        let text = s.to_text();
        assert!(text.starts_with("qubits=2\n"));
        assert_eq!(text.lines().count(), 5);
        let back = StateVector::from_text(&text).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-15);

        let truncated: String = text.lines().take(3).collect::<Vec<_>>().join("\n");
        assert_eq!(
            StateVector::from_text(&truncated),
            Err(QuantumError::AmplitudeCount {
                declared: 2,
                expected: 4,
                found: 2
            })
        );
        assert!(StateVector::from_text("qubits=1\n1 0\n1 0\n").is_err());
        assert!(StateVector::from_text("qbits=1\n1 0\n0 0\n").is_err());
    }

    #[test]
    fn ket_string_shows_signs() {
        let s = StateVector::from_amplitudes(vec![c(0.6), c(-0.8)]).unwrap();
        assert_eq!(s.ket_string(), "0.6000|0> - 0.8000|1>");
    }
}
