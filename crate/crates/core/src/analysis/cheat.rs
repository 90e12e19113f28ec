use rand::Rng;
use serde::Serialize;

use crate::analysis::montecarlo::{estimate, McEstimate};
use crate::error::AnalysisError;
use crate::protocol::{verify_held, Parent};
use crate::scheme::CommitmentScheme;

/// Parameters a report was produced under.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ReportParams {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blocks: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_s: Option<f64>,
}

/// Exact probability of a scenario, optionally with a Monte Carlo check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheatReport {
    pub scenario: String,
    pub exact: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<McEstimate>,
    pub params: ReportParams,
}

impl CheatReport {
    pub fn passed_monte_carlo(&self) -> bool {
        self.monte_carlo.map_or(true, |m| m.within_3sigma)
    }
}

/// Probability Bob accepts when Alice committed element `k` of `B_c_true`
/// and reveals `c_claimed` (1 for an honest reveal).
pub fn reveal_acceptance(
    scheme: &CommitmentScheme,
    c_true: usize,
    k: usize,
    c_claimed: usize,
) -> Result<f64, AnalysisError> {
    let held = scheme.element(c_true, k)?;
    scheme.params().check_choice(c_claimed)?;
    let product = held.tensor(scheme.reveal_state(c_claimed));
    Ok(scheme.reveal_basis(c_claimed).valid_mass(&product)?)
}

/// [`reveal_acceptance`] restricted to actual cheats (`c_true != c_claimed`).
pub fn alice_cheat_acceptance(
    scheme: &CommitmentScheme,
    c_true: usize,
    k: usize,
    c_claimed: usize,
) -> Result<f64, AnalysisError> {
    if c_true == c_claimed {
        return Err(AnalysisError::IdenticalChoices(c_true));
    }
    reveal_acceptance(scheme, c_true, k, c_claimed)
}

/// Best single-block cheat acceptance over every `(c_true, k, c_claimed)`.
pub fn max_cheat_acceptance(scheme: &CommitmentScheme) -> f64 {
    let m = scheme.num_choices();
    let mut best = 0.0f64;
    for c in 0..m {
        for k in 0..scheme.set(c).len() {
            for claim in (0..m).filter(|&x| x != c) {
                let p = reveal_acceptance(scheme, c, k, claim).expect("indices in range");
                best = best.max(p);
            }
        }
    }
    best
}

/// Probability a cheat survives `blocks` independent block verifications.
pub fn block_cheat_fidelity(scheme: &CommitmentScheme, blocks: u32) -> Result<f64, AnalysisError> {
    if blocks == 0 {
        return Err(AnalysisError::ZeroBlocks);
    }
    Ok(max_cheat_acceptance(scheme).powi(blocks as i32))
}

/// Exact and simulated acceptance for a fixed cheat, uniform over `k`.
pub fn alice_cheat_report(
    scheme: &CommitmentScheme,
    c_true: usize,
    c_claimed: usize,
    trials: u64,
    seed: u64,
) -> Result<CheatReport, AnalysisError> {
    let len = scheme.set(c_true).len();
    let exact = (0..len)
        .map(|k| alice_cheat_acceptance(scheme, c_true, k, c_claimed))
        .sum::<Result<f64, _>>()?
        / len as f64;
    let monte_carlo = (trials > 0).then(|| {
        estimate(exact, trials, seed, |rng| {
            let k = rng.gen_range(0..len);
            let held = scheme.set(c_true).element(k);
            let r = verify_held(scheme, held, c_claimed, Parent::B, rng).expect("valid choice");
            f64::from(u8::from(r.accepted))
        })
    });
    Ok(CheatReport {
        scenario: format!("alice-cheat {c_true}->{c_claimed}"),
        exact,
        monte_carlo,
        params: ReportParams {
            n: scheme.n(),
            ..Default::default()
        },
    })
}

/// K-block cheat: every block commits a random element of a random set and
/// reveals a different random choice; success means all blocks accept.
pub fn block_cheat_report(
    scheme: &CommitmentScheme,
    blocks: u32,
    trials: u64,
    seed: u64,
) -> Result<CheatReport, AnalysisError> {
    let exact = block_cheat_fidelity(scheme, blocks)?;
    let m = scheme.num_choices();
    let monte_carlo = (trials > 0).then(|| {
        estimate(exact, trials, seed, |rng| {
            let all = (0..blocks).all(|_| {
                let c = rng.gen_range(0..m);
                let claim = (c + rng.gen_range(1..m)) % m;
                let k = rng.gen_range(0..scheme.set(c).len());
                verify_held(scheme, scheme.set(c).element(k), claim, Parent::B, rng)
                    .expect("valid choice")
                    .accepted
            });
            f64::from(u8::from(all))
        })
    });
    Ok(CheatReport {
        scenario: format!("block-cheat K={blocks}"),
        exact,
        monte_carlo,
        params: ReportParams {
            n: scheme.n(),
            blocks: Some(blocks),
            ..Default::default()
        },
    })
}
