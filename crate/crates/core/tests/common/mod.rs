//! Reference computations shared by the integration tests.
//!
//! Everything here works on plain real vectors and matrices and never calls
//! into the library's linear algebra, so agreement with it is meaningful.
#![allow(dead_code)]

use qbc_core::StateVector;

pub const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

pub fn default_masks(n: usize) -> Vec<u32> {
    (1..=(1u32 << n)).collect()
}

/// Elements of the set for mask `d` over `n + 1` qubits, ordered by their
/// smaller basis index.
pub fn set_elements(n: usize, d: u32) -> Vec<Vec<f64>> {
    let dim = 1usize << (n + 1);
    let d = d as usize;
    (0..dim)
        .filter(|&x| x < x ^ d)
        .map(|x| {
            let mut v = vec![0.0; dim];
            v[x] = H;
            v[x ^ d] = H;
            v
        })
        .collect()
}

/// `(|0,c2..cn> + (-1)^c1 |1,!c2..!cn>)/sqrt(2)` written out directly.
pub fn reveal_state(n: usize, c: usize) -> Vec<f64> {
    let dim = 1usize << n;
    let top = 1usize << (n - 1);
    let rest = c & (top - 1);
    let mut v = vec![0.0; dim];
    v[rest] = H;
    let sign = if c & top != 0 { -1.0 } else { 1.0 };
    v[top | (!rest & (top - 1))] += sign * H;
    v
}

pub fn kron(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Probability mass of `psi` on the span of orthonormal `vectors`.
pub fn projected_mass(vectors: &[Vec<f64>], psi: &[f64]) -> f64 {
    vectors.iter().map(|v| dot(v, psi).powi(2)).sum()
}

/// Mass of `held ⊗ G_claim` on the valid products for `claim`.
pub fn acceptance(n: usize, masks: &[u32], held: &[f64], claim: usize) -> f64 {
    let g = reveal_state(n, claim);
    let valid: Vec<Vec<f64>> = set_elements(n, masks[claim])
        .iter()
        .map(|e| kron(e, &g))
        .collect();
    projected_mass(&valid, &kron(held, &g))
}

pub fn max_diff(lib: &StateVector, oracle: &[f64]) -> f64 {
    assert_eq!(lib.dimension(), oracle.len());
    lib.amplitudes()
        .iter()
        .zip(oracle)
        .map(|(a, &b)| (a.re - b).abs().max(a.im.abs()))
        .fold(0.0, f64::max)
}

/// Parses a ket sum such as `+|010>-|001>` into a real vector scaled by
/// `scale`.
pub fn ket_sum(num_qubits: usize, text: &str, scale: f64) -> Vec<f64> {
    let mut v = vec![0.0; 1 << num_qubits];
    let mut sign = 1.0;
    let mut chars = text.chars().filter(|c| !c.is_whitespace()).peekable();
    while let Some(ch) = chars.next() {
        match ch {
            '+' => sign = 1.0,
            '-' => sign = -1.0,
            '|' => {
                let bits: String = chars.by_ref().take_while(|&c| c != '>').collect();
                assert_eq!(bits.len(), num_qubits, "ket {bits}");
                v[usize::from_str_radix(&bits, 2).unwrap()] += sign * scale;
                sign = 1.0;
            }
            other => panic!("unexpected {other:?} in {text}"),
        }
    }
    v
}

/// Real symmetric matrix, row-major.
#[derive(Clone, Debug)]
pub struct Sym {
    pub n: usize,
    pub a: Vec<f64>,
}

impl Sym {
    pub fn zeros(n: usize) -> Self {
        Self { n, a: vec![0.0; n * n] }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    /// Uniform mixture of projectors onto real vectors.
    pub fn mixture(states: &[Vec<f64>]) -> Self {
        let n = states[0].len();
        let mut m = Self::zeros(n);
        let w = 1.0 / states.len() as f64;
        for s in states {
            for i in 0..n {
                for j in 0..n {
                    m.a[i * n + j] += w * s[i] * s[j];
                }
            }
        }
        m
    }

    pub fn combine(&self, alpha: f64, other: &Sym, beta: f64) -> Self {
        Self {
            n: self.n,
            a: self.a.iter().zip(&other.a).map(|(x, y)| alpha * x + beta * y).collect(),
        }
    }

    /// Cyclic Jacobi rotations; returns eigenvalues (unordered) and
    /// eigenvectors as columns of a row-major matrix.
    pub fn jacobi(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut a = self.a.clone();
        let mut v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
        for _sweep in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| a[i * n + j].powi(2))
                .sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p * n + q];
                    if apq.abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[k * n + p];
                        let akq = a[k * n + q];
                        a[k * n + p] = c * akp - s * akq;
                        a[k * n + q] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[p * n + k];
                        let aqk = a[q * n + k];
                        a[p * n + k] = c * apk - s * aqk;
                        a[q * n + k] = s * apk + c * aqk;
                    }
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
        ((0..n).map(|i| a[i * n + i]).collect(), v)
    }

    pub fn trace_norm(&self) -> f64 {
        self.jacobi().0.iter().map(|l| l.abs()).sum()
    }
}

/// Helstrom success from a Jacobi eigensolve of `(rho1 - rho2)`.
pub fn helstrom_oracle(rho1: &Sym, rho2: &Sym) -> f64 {
    0.5 + 0.25 * rho1.combine(1.0, rho2, -1.0).trace_norm()
}

/// Eigenvalue of the mixture for mask `d` on Hadamard basis vector `y`:
/// the mixture equals `(I + X^d) / 2^(n+1)`, diagonal in that basis.
pub fn hadamard_eigenvalue(n: usize, d: u32, y: usize) -> f64 {
    let sign = if (d as usize & y).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
    (1.0 + sign) / (1u64 << (n + 1)) as f64
}

pub fn helstrom_closed_form(n: usize, d1: u32, d2: u32) -> f64 {
    let norm: f64 = (0..1usize << (n + 1))
        .map(|y| (hadamard_eigenvalue(n, d1, y) - hadamard_eigenvalue(n, d2, y)).abs())
        .sum();
    0.5 + 0.25 * norm
}

/// Square-root measurement success when every mixture is diagonal in one
/// shared basis: `sum_i p_i^2 sum_y lambda_i(y)^2 / avg(y)`.
pub fn pgm_closed_form(n: usize, masks: &[u32]) -> f64 {
    let p = 1.0 / masks.len() as f64;
    (0..1usize << (n + 1))
        .map(|y| {
            let lams: Vec<f64> = masks.iter().map(|&d| hadamard_eigenvalue(n, d, y)).collect();
            let avg: f64 = lams.iter().map(|l| p * l).sum();
            if avg < 1e-15 {
                0.0
            } else {
                lams.iter().map(|l| p * p * l * l).sum::<f64>() / avg
            }
        })
        .sum()
}

/// Update-on-reject success by walking every (c, k, g) branch and both
/// measurement verdicts.
pub fn update_on_reject_enumeration(n: usize, masks: &[u32]) -> f64 {
    let m = masks.len();
    let mut total = 0.0;
    for c in 0..m {
        let elements = set_elements(n, masks[c]);
        for e in &elements {
            for g in 0..m {
                let weight = 1.0 / (m * elements.len() * m) as f64;
                let accept = acceptance(n, masks, e, g);
                for (p_branch, accepted) in [(accept, true), (1.0 - accept, false)] {
                    // declared set after the verdict, averaged over the
                    // uniform fallback on reject
                    let win = if accepted {
                        f64::from(u8::from(g == c))
                    } else if g == c {
                        0.0
                    } else {
                        1.0 / (m - 1) as f64
                    };
                    total += weight * p_branch * win;
                }
            }
        }
    }
    total
}

/// Identification success of "assume parent S, measure computationally"
/// over every (parent, c, k, outcome) branch.
pub fn s_protocol_enumeration(n: usize, masks: &[u32], p_s: f64) -> f64 {
    let m = masks.len();
    let dim = 1usize << (n + 1);
    let win = |x: usize, c: usize| {
        if x < m {
            f64::from(u8::from(x == c))
        } else {
            1.0 / m as f64
        }
    };
    let mut total = 0.0;
    for c in 0..m {
        // S parent: the basis state bound to c is |c>
        total += p_s / m as f64 * win(c, c);
        let elements = set_elements(n, masks[c]);
        for e in &elements {
            for x in 0..dim {
                total += (1.0 - p_s) / (m * elements.len()) as f64 * e[x] * e[x] * win(x, c);
            }
        }
    }
    total
}
