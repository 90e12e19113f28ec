//! Byte-exact text serializations for the coin-toss preset. Set
//! `QBC_BLESS=1` to rewrite the files after an intentional format change.

mod common;

use std::path::PathBuf;

use common::*;
use qbc_core::{CommitmentScheme, SchemeParams, StateVector};

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/paper_cointoss")
}

fn states() -> Vec<(String, StateVector, Vec<f64>)> {
    let s = CommitmentScheme::new(SchemeParams::paper_cointoss()).unwrap();
    let masks = s.params().masks().to_vec();
    let mut out = Vec::new();
    for c in 0..2 {
        let oracle = set_elements(1, masks[c]);
        let g = reveal_state(1, c);
        out.push((format!("g{c}"), s.reveal_state(c).clone(), g.clone()));
        for k in 0..2 {
            out.push((format!("b{c}_k{k}"), s.set(c).element(k).clone(), oracle[k].clone()));
            out.push((
                format!("product{c}_k{k}"),
                s.agreement().basis(c).valid_products[k].clone(),
                kron(&oracle[k], &g),
            ));
        }
    }
    out
}

#[test]
fn serializations_match_golden_files() {
    let bless = std::env::var_os("QBC_BLESS").is_some();
    for (name, state, oracle) in states() {
        assert!(max_diff(&state, &oracle) < 1e-12, "{name} differs from the reference");
        let path = golden_dir().join(format!("{name}.txt"));
        let text = state.to_text();
        if bless {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(text, want, "{name}");
    }
}

#[test]
fn golden_files_parse_back() {
    for (name, state, _) in states() {
        let path = golden_dir().join(format!("{name}.txt"));
        let Ok(text) = std::fs::read_to_string(&path) else { continue };
        let parsed = StateVector::from_text(&text).unwrap();
        assert!(parsed.max_abs_diff(&state) < 1e-12, "{name}");
    }
}
