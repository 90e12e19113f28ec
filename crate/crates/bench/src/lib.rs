//! Shared fixtures for the criterion benches.

use qbc_core::{CommitmentScheme, SchemeParams};

/// Default-mask scheme for the given N, panicking on invalid N.
pub fn scheme(n: usize) -> CommitmentScheme {
    CommitmentScheme::new(SchemeParams::default_masks(n).expect("valid N")).expect("scheme builds")
}
