use rand::Rng;

use crate::analysis::cheat::{CheatReport, ReportParams};
use crate::analysis::montecarlo::estimate;
use crate::error::AnalysisError;
use crate::scheme::{CommitmentScheme, SetS};

/// Bob's identification probability in the reduced-qubit variant when he
/// assumes parent S and measures in the computational basis.
///
/// Alice picks parent S with probability `p_s` (else a uniform element of
/// `B_c`), with `c` uniform. An outcome bound to a choice is declared as
/// that choice; any other outcome gets a uniform guess.
pub fn s_protocol_exact(scheme: &CommitmentScheme, p_s: f64) -> Result<f64, AnalysisError> {
    check_p(p_s)?;
    let m = scheme.num_choices();
    let basis = scheme.computational_basis();
    let chance = 1.0 / m as f64;
    let success_for = |outcome: usize, c: usize| match SetS::choice_for_outcome(outcome, m) {
        Some(declared) => f64::from(u8::from(declared == c)),
        None => chance,
    };
    let mut from_s = 0.0;
    let mut from_b = 0.0;
    for c in 0..m {
        let probs = basis.born_distribution(scheme.set_s().bound_state(c))?;
        from_s += chance * probs.iter().enumerate().map(|(x, p)| p * success_for(x, c)).sum::<f64>();
        let set = scheme.set(c);
        for e in &set.elements {
            let probs = basis.born_distribution(&e.state)?;
            let w = chance / set.len() as f64;
            from_b += w * probs.iter().enumerate().map(|(x, p)| p * success_for(x, c)).sum::<f64>();
        }
    }
    Ok(p_s * from_s + (1.0 - p_s) * from_b)
}

pub fn s_protocol_analysis(
    scheme: &CommitmentScheme,
    p_s: f64,
    trials: u64,
    seed: u64,
) -> Result<CheatReport, AnalysisError> {
    let exact = s_protocol_exact(scheme, p_s)?;
    let m = scheme.num_choices();
    let basis = scheme.computational_basis();
    let monte_carlo = (trials > 0).then(|| {
        estimate(exact, trials, seed, |rng| {
            let c = rng.gen_range(0..m);
            let held = if rng.gen_bool(p_s) {
                scheme.set_s().bound_state(c)
            } else {
                let set = scheme.set(c);
                set.element(rng.gen_range(0..set.len()))
            };
            let outcome = basis.measure(held, rng).expect("dimensions agree");
            let declared = SetS::choice_for_outcome(outcome, m).unwrap_or_else(|| rng.gen_range(0..m));
            f64::from(u8::from(declared == c))
        })
    });
    Ok(CheatReport {
        scenario: format!("s-protocol p_S={p_s}"),
        exact,
        monte_carlo,
        params: ReportParams {
            n: scheme.n(),
            p_s: Some(p_s),
            ..Default::default()
        },
    })
}

/// Evaluates `points` evenly spaced values of `p_S` over `[0, 1]`.
pub fn s_protocol_sweep(
    scheme: &CommitmentScheme,
    points: usize,
    trials: u64,
    seed: u64,
) -> Result<Vec<CheatReport>, AnalysisError> {
    let steps = points.max(2) - 1;
    (0..=steps)
        .map(|i| {
            let p = i as f64 / steps as f64;
            s_protocol_analysis(scheme, p, trials, crate::rng::derive_seed(seed, i as u64))
        })
        .collect()
}

fn check_p(p: f64) -> Result<(), AnalysisError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(AnalysisError::ProbabilityOutOfRange(p));
    }
    Ok(())
}
