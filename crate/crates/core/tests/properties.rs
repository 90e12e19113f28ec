mod common;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use qbc_core::analysis::{
    alice_cheat_acceptance, bob_wrong_coupling_table, helstrom_bound, s_protocol_sweep,
    EnsembleMixture,
};
use qbc_core::quantum::{apply_gate, complete_basis, hermitian_eig, Gate};
use qbc_core::rng::stream;
use qbc_core::{CommitmentScheme, Complex64, HermitianMatrix, MeasurementBasis, SchemeParams, StateVector};

fn random_state(num_qubits: usize, seed: u64) -> StateVector {
    let mut rng = stream(seed, 3);
    let amps = (0..1usize << num_qubits)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    StateVector::normalized(amps).unwrap()
}

fn random_hermitian(dim: usize, seed: u64) -> HermitianMatrix {
    let mut rng = stream(seed, 4);
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for i in 0..dim {
        entries[i * dim + i] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for j in i + 1..dim {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            entries[i * dim + j] = z;
            entries[j * dim + i] = z.conj();
        }
    }
    HermitianMatrix::from_rows(dim, &entries).unwrap()
}

/// Distinct non-zero masks for `n`, drawn from a seed.
fn random_masks(n: usize, seed: u64) -> Vec<u32> {
    let mut rng = stream(seed, 5);
    let mut pool: Vec<u32> = (1..1u32 << (n + 1)).collect();
    let m = 1 << n;
    for i in 0..m {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(m);
    pool
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gates_preserve_norm(n in 1usize..=9, seed: u64, q in 0usize..9, t in 0usize..9, g in 0usize..4) {
        let q = q % n;
        let psi = random_state(n, seed);
        let out = match g {
            0 => apply_gate(&psi, Gate::H, &[q]),
            1 => apply_gate(&psi, Gate::X, &[q]),
            2 => apply_gate(&psi, Gate::Z, &[q]),
            _ if n > 1 && t % n != q => apply_gate(&psi, Gate::Cnot, &[q, t % n]),
            _ => apply_gate(&psi, Gate::H, &[q]),
        }.unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn tensor_inner_factorizes(a in 1usize..=4, b in 1usize..=4, seed: u64) {
        let (x1, x2) = (random_state(a, seed), random_state(a, seed ^ 1));
        let (y1, y2) = (random_state(b, seed ^ 2), random_state(b, seed ^ 3));
        let lhs = x1.tensor(&y1).inner(&x2.tensor(&y2)).unwrap();
        let rhs = x1.inner(&x2).unwrap() * y1.inner(&y2).unwrap();
        prop_assert!((lhs - rhs).norm() < 1e-9);
        prop_assert_eq!(x1.tensor(&y1).num_qubits(), a + b);
    }

    #[test]
    fn completed_basis_is_orthonormal(k in 1usize..=5, seed: u64) {
        let dim = 1usize << k;
        let mut rng = stream(seed, 6);
        let given = rng.gen_range(1..=dim);
        // orthonormal seeds: the first `given` columns of a random unitary's
        // eigenvectors
        let eig = hermitian_eig(&random_hermitian(dim, seed));
        let partial: Vec<StateVector> = (0..given)
            .map(|j| StateVector::from_amplitudes(eig.vectors.column(j).iter().copied().collect()).unwrap())
            .collect();
        let basis = complete_basis(&partial, dim).unwrap();
        prop_assert_eq!(basis.vectors().len(), dim);
        for (i, p) in partial.iter().enumerate() {
            prop_assert!(basis.vector(i).max_abs_diff(p) < 1e-9);
        }
        for i in 0..dim {
            for j in 0..dim {
                let want = if i == j { 1.0 } else { 0.0 };
                let got = basis.vector(i).inner(basis.vector(j)).unwrap();
                prop_assert!((got - Complex64::new(want, 0.0)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn eigendecomposition_is_consistent(dim in 2usize..=12, seed: u64) {
        let h = random_hermitian(dim, seed);
        let eig = hermitian_eig(&h);
        let sum: f64 = eig.values.iter().sum();
        prop_assert!((sum - h.trace()).abs() < 1e-9);
        prop_assert!(eig.values.windows(2).all(|w| w[0] <= w[1] + 1e-12));
        let v = &eig.vectors;
        let gram = v.adjoint() * v;
        for i in 0..dim {
            for j in 0..dim {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((gram[(i, j)] - Complex64::new(want, 0.0)).norm() < 1e-9);
            }
        }
        for (j, &l) in eig.values.iter().enumerate() {
            let col = v.column(j);
            let hv = h.as_matrix() * col;
            let err = (hv - col * Complex64::new(l, 0.0)).iter().map(|z| z.norm()).fold(0.0, f64::max);
            prop_assert!(err < 1e-9);
        }
    }

    #[test]
    fn born_distribution_is_squared_projection(n in 1usize..=5, seed: u64) {
        let psi = random_state(n, seed);
        let probs = MeasurementBasis::computational(n).born_distribution(&psi).unwrap();
        prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        for (i, p) in probs.iter().enumerate() {
            prop_assert!((p - psi.amplitude(i).norm_sqr()).abs() < 1e-12);
        }
    }

    #[test]
    fn random_masks_keep_cheats_at_one_half(n in 1usize..=3, seed: u64) {
        let masks = random_masks(n, seed);
        let s = CommitmentScheme::new(SchemeParams::with_masks(n, masks.clone()).unwrap()).unwrap();
        let m = s.num_choices();
        let mut rng = stream(seed, 7);
        for _ in 0..8 {
            let c = rng.gen_range(0..m);
            let claim = (c + rng.gen_range(1..m)) % m;
            let k = rng.gen_range(0..s.set(c).len());
            let p = alice_cheat_acceptance(&s, c, k, claim).unwrap();
            prop_assert!((p - 0.5).abs() < 1e-9);
            let o = acceptance(n, &masks, &set_elements(n, masks[c])[k], claim);
            prop_assert!((p - o).abs() < 1e-9);
        }
        prop_assert!(bob_wrong_coupling_table(&s).iter().all(|r| (r.valid_mass - 0.5).abs() < 1e-9));
    }

    #[test]
    fn helstrom_closed_form_for_random_masks(n in 1usize..=3, seed: u64) {
        let masks = random_masks(n, seed);
        let s = CommitmentScheme::new(SchemeParams::with_masks(n, masks.clone()).unwrap()).unwrap();
        let a = EnsembleMixture::for_choice(&s, 0);
        let b = EnsembleMixture::for_choice(&s, 1);
        let lib = helstrom_bound(&a, &b).unwrap();
        let oracle = helstrom_closed_form(n, masks[0], masks[1]);
        prop_assert!((lib - oracle).abs() < 1e-9);
        prop_assert!(lib >= 0.5 - 1e-12);
    }

    #[test]
    fn helstrom_shrinks_when_mixing(seed: u64, t in 0.0f64..1.0) {
        let s = CommitmentScheme::new(SchemeParams::default_masks(2).unwrap()).unwrap();
        let a = EnsembleMixture::for_choice(&s, 0);
        let b = EnsembleMixture::for_choice(&s, 1 + (seed % 3) as usize);
        let mixed = EnsembleMixture {
            choice: 0,
            rho: a.rho.scaled(1.0 - t).add(&b.rho.scaled(t)).unwrap(),
        };
        let full = helstrom_bound(&a, &b).unwrap();
        let partial = helstrom_bound(&mixed, &b).unwrap();
        prop_assert!(partial <= full + 1e-9);
        prop_assert!(partial >= 0.5 - 1e-12);
    }
}

#[test]
fn helstrom_is_chance_only_for_equal_mixtures() {
    let s = CommitmentScheme::new(SchemeParams::default_masks(2).unwrap()).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let p = helstrom_bound(&EnsembleMixture::for_choice(&s, i), &EnsembleMixture::for_choice(&s, j)).unwrap();
            assert_eq!((p - 0.5).abs() < 1e-9, i == j, "pair ({i}, {j}) gave {p}");
        }
    }
}

#[test]
fn jacobi_oracle_agrees_with_library_trace_norm() {
    // sanity check on the oracle itself against a hand-diagonalizable case
    let m = Sym { n: 2, a: vec![0.0, 1.0, 1.0, 0.0] };
    let (vals, _) = m.jacobi();
    let mut vals = vals;
    vals.sort_by(f64::total_cmp);
    assert!((vals[0] + 1.0).abs() < 1e-12 && (vals[1] - 1.0).abs() < 1e-12);

    for n in 1..=2 {
        let masks = default_masks(n);
        let s = CommitmentScheme::new(SchemeParams::default_masks(n).unwrap()).unwrap();
        for a in 0..masks.len() {
            for b in a + 1..masks.len() {
                let ra = Sym::mixture(&set_elements(n, masks[a]));
                let rb = Sym::mixture(&set_elements(n, masks[b]));
                let oracle = helstrom_oracle(&ra, &rb);
                let closed = helstrom_closed_form(n, masks[a], masks[b]);
                let lib = helstrom_bound(&EnsembleMixture::for_choice(&s, a), &EnsembleMixture::for_choice(&s, b)).unwrap();
                assert!((oracle - closed).abs() < 1e-9, "N={n} ({a},{b}): {oracle} vs {closed}");
                assert!((lib - oracle).abs() < 1e-9, "N={n} ({a},{b}): {lib} vs {oracle}");
            }
        }
    }
}

#[test]
fn s_sweep_monotone_for_every_n() {
    for n in 1..=4 {
        let s = CommitmentScheme::new(SchemeParams::default_masks(n).unwrap()).unwrap();
        let sweep = s_protocol_sweep(&s, 11, 0, 0).unwrap();
        assert!(sweep.windows(2).all(|w| w[1].exact >= w[0].exact - 1e-12), "N={n}");
        let masks = default_masks(n);
        for (i, r) in sweep.iter().enumerate() {
            let o = s_protocol_enumeration(n, &masks, i as f64 / 10.0);
            assert!((r.exact - o).abs() < 1e-9);
        }
    }
}
