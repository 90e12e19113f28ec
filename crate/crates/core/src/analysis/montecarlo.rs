use rayon::prelude::*;
use serde::Serialize;

use crate::rng::{stream, SimRng};

/// Trials per independent RNG stream. Fixed so results do not depend on
/// the thread count.
pub const CHUNK: u64 = 8192;

/// First stream id used by Monte Carlo chunks (0 and 1 belong to the
/// protocol endpoints).
const FIRST_STREAM: u64 = 16;

/// Outcome of a Bernoulli Monte Carlo run compared against an exact value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    /// Binomial standard error `sqrt(p(1-p)/n)` at the exact probability.
    pub std_error: f64,
    /// `|estimate - exact| <= 3 * std_error`.
    pub within_3sigma: bool,
}

/// Runs `trials` independent Bernoulli trials in parallel and compares the
/// success frequency with `exact`.
pub fn estimate<F>(exact: f64, trials: u64, seed: u64, trial: F) -> McEstimate
where
    F: Fn(&mut SimRng) -> f64 + Sync,
{
    let chunks = trials.div_ceil(CHUNK);
    let total: f64 = (0..chunks)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, FIRST_STREAM + i);
            let n = CHUNK.min(trials - i * CHUNK);
            (0..n).map(|_| trial(&mut rng)).sum::<f64>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .sum();
    summarize(exact, trials, total)
}

fn summarize(exact: f64, trials: u64, total: f64) -> McEstimate {
    let estimate = if trials == 0 { f64::NAN } else { total / trials as f64 };
    let variance = (exact * (1.0 - exact)).max(0.0);
    let std_error = (variance / trials.max(1) as f64).sqrt();
    let within_3sigma = (estimate - exact).abs() <= 3.0 * std_error + 1e-12;
    McEstimate {
        trials,
        successes: total.round() as u64,
        estimate,
        std_error,
        within_3sigma,
    }
}
