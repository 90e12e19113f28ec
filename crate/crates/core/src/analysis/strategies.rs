use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::analysis::cheat::{CheatReport, ReportParams};
use crate::analysis::montecarlo::estimate;
use crate::error::AnalysisError;
use crate::quantum::StateVector;
use crate::scheme::CommitmentScheme;

/// One row of the wrong-coupling table: Bob appends `G_{coupled}` to an
/// element of `B_{held}` with `coupled != held`.
#[derive(Clone, Debug, Serialize)]
pub struct WrongCouplingRow {
    pub held_choice: usize,
    pub element: usize,
    pub coupled_choice: usize,
    #[serde(serialize_with = "ser_state")]
    pub product: StateVector,
    /// Probability mass on the valid outcomes of basis `coupled_choice`.
    pub valid_mass: f64,
}

fn ser_state<S: serde::Serializer>(s: &StateVector, ser: S) -> Result<S::Ok, S::Error> {
    ser.serialize_str(&s.ket_string())
}

/// Every product Bob can form by coupling a held element with a reveal
/// state that does not belong to it.
pub fn bob_wrong_coupling_table(scheme: &CommitmentScheme) -> Vec<WrongCouplingRow> {
    let m = scheme.num_choices();
    let mut rows = Vec::new();
    for held in 0..m {
        for (k, e) in scheme.set(held).elements.iter().enumerate() {
            for coupled in (0..m).filter(|&c| c != held) {
                let product = e.state.tensor(scheme.reveal_state(coupled));
                let valid_mass = scheme
                    .reveal_basis(coupled)
                    .valid_mass(&product)
                    .expect("dimensions agree");
                rows.push(WrongCouplingRow {
                    held_choice: held,
                    element: k,
                    coupled_choice: coupled,
                    product,
                    valid_mass,
                });
            }
        }
    }
    rows
}

/// Bob's pre-reveal identification strategies: guess a set `g`, couple the
/// held state with `G_g` and measure in the reveal basis for `g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Strategy {
    /// Declare `g` whatever the outcome.
    DeclarePriorGuess,
    /// Declare `g` on a valid outcome, otherwise a uniformly random other set.
    UpdateOnReject,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::DeclarePriorGuess => "declare-prior-guess",
            Strategy::UpdateOnReject => "update-on-reject",
        }
    }

    /// Success probability given the true set, the guess, and the
    /// probability that the measurement accepted.
    fn success_given(self, c: usize, g: usize, accept: f64, m: usize) -> f64 {
        let hit = if c == g { 1.0 } else { 0.0 };
        match self {
            Strategy::DeclarePriorGuess => hit,
            Strategy::UpdateOnReject => {
                let miss = if c == g { 0.0 } else { 1.0 / (m - 1) as f64 };
                accept * hit + (1.0 - accept) * miss
            }
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "declare-prior-guess" => Ok(Strategy::DeclarePriorGuess),
            "update-on-reject" => Ok(Strategy::UpdateOnReject),
            other => Err(AnalysisError::UnknownStrategy(other.to_owned())),
        }
    }
}

/// Exact success of `strategy` under uniform priors over `(c, k)` and a
/// uniform prior guess `g`.
pub fn premature_success_exact(scheme: &CommitmentScheme, strategy: Strategy) -> f64 {
    let m = scheme.num_choices();
    let mut total = 0.0;
    for c in 0..m {
        let set = scheme.set(c);
        for e in &set.elements {
            for g in 0..m {
                let product = e.state.tensor(scheme.reveal_state(g));
                let accept = scheme
                    .reveal_basis(g)
                    .valid_mass(&product)
                    .expect("dimensions agree");
                let weight = 1.0 / (m * set.len() * m) as f64;
                total += weight * strategy.success_given(c, g, accept, m);
            }
        }
    }
    total
}

/// Mean acceptance over all wrong couplings.
pub fn wrong_coupling_acceptance(scheme: &CommitmentScheme) -> f64 {
    let rows = bob_wrong_coupling_table(scheme);
    rows.iter().map(|r| r.valid_mass).sum::<f64>() / rows.len() as f64
}

pub fn bob_premature_strategy(
    scheme: &CommitmentScheme,
    strategy: Strategy,
    trials: u64,
    seed: u64,
) -> CheatReport {
    let exact = premature_success_exact(scheme, strategy);
    let m = scheme.num_choices();
    let monte_carlo = (trials > 0).then(|| {
        estimate(exact, trials, seed, |rng| {
            let c = rng.gen_range(0..m);
            let k = rng.gen_range(0..scheme.set(c).len());
            let g = rng.gen_range(0..m);
            let product = scheme.set(c).element(k).tensor(scheme.reveal_state(g));
            let basis = scheme.reveal_basis(g);
            let outcome = basis.measure(&product, rng).expect("dimensions agree");
            let declared = match strategy {
                Strategy::DeclarePriorGuess => g,
                Strategy::UpdateOnReject if basis.is_valid(outcome) => g,
                Strategy::UpdateOnReject => (g + rng.gen_range(1..m)) % m,
            };
            f64::from(u8::from(declared == c))
        })
    });
    CheatReport {
        scenario: format!("bob-premature {strategy}"),
        exact,
        monte_carlo,
        params: ReportParams {
            n: scheme.n(),
            strategy: Some(strategy.name().into()),
            ..Default::default()
        },
    }
}
