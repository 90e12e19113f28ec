use std::fmt::Write as _;

use serde::Serialize;

use crate::analysis::{
    alice_cheat_acceptance, alice_cheat_report, block_cheat_report, bob_premature_strategy,
    bob_wrong_coupling_table, helstrom_bound, pgm_success, s_protocol_sweep, scheme_ensembles,
    wrong_coupling_acceptance, CheatReport, Strategy, WrongCouplingRow,
};
use crate::error::AnalysisError;
use crate::rng::derive_seed;
use crate::scheme::CommitmentScheme;
use crate::tolerance::NORM_TOL;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisConfig {
    pub seed: u64,
    /// Monte Carlo trials per scenario; 0 gives an exact-only report.
    pub trials: u64,
    pub max_blocks: u32,
    pub sweep_points: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 100_000,
            max_blocks: 8,
            sweep_points: 11,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeSummary {
    pub n: usize,
    pub preset: String,
    pub masks: Vec<String>,
    pub scheme_hash: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheatSummary {
    pub configurations: usize,
    pub min: f64,
    pub max: f64,
    pub sample: CheatReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRow {
    pub blocks: u32,
    pub expected: f64,
    pub report: CheatReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct WrongCouplingSummary {
    pub rows: usize,
    pub min_valid_mass: f64,
    pub max_valid_mass: f64,
    pub mean_acceptance: f64,
    /// Listed in full only for small tables.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<WrongCouplingRow>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiscriminationSummary {
    pub chance: f64,
    pub helstrom_first_pair: f64,
    pub helstrom_max_pair: f64,
    pub pgm_uniform: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportCheck {
    pub name: String,
    pub passed: bool,
}

/// Output of the full analysis battery.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub scheme: SchemeSummary,
    pub seed: u64,
    pub trials: u64,
    pub alice_cheat: CheatSummary,
    pub block_fidelity: Vec<BlockRow>,
    pub wrong_coupling: WrongCouplingSummary,
    pub strategies: Vec<CheatReport>,
    pub discrimination: DiscriminationSummary,
    pub s_protocol: Vec<CheatReport>,
    pub checks: Vec<ReportCheck>,
}

impl AnalysisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering for terminals.
    pub fn render_table(&self) -> String {
        let mut out = String::new();
        let s = &self.scheme;
        let _ = writeln!(
            out,
            "scheme: N={} preset={} masks=[{}] hash={}",
            s.n,
            s.preset,
            s.masks.join(","),
            &s.scheme_hash[..12]
        );
        let _ = writeln!(out, "seed={} trials={}", self.seed, self.trials);
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<34} {:>12} {:>12} {:>10}", "scenario", "exact", "estimate", "3sigma");
        let mut row = |r: &CheatReport| {
            let (est, ok) = match r.monte_carlo {
                Some(m) => (format!("{:.6}", m.estimate), if m.within_3sigma { "ok" } else { "FAIL" }),
                None => ("-".into(), "-"),
            };
            let _ = writeln!(out, "{:<34} {:>12.6} {:>12} {:>10}", r.scenario, r.exact, est, ok);
        };
        row(&self.alice_cheat.sample);
        for b in &self.block_fidelity {
            row(&b.report);
        }
        for r in &self.strategies {
            row(r);
        }
        for r in &self.s_protocol {
            row(r);
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "alice cheat acceptance over {} configurations: min {:.12} max {:.12}",
            self.alice_cheat.configurations, self.alice_cheat.min, self.alice_cheat.max
        );
        let w = &self.wrong_coupling;
        let _ = writeln!(
            out,
            "wrong couplings: {} rows, valid mass in [{:.12}, {:.12}]",
            w.rows, w.min_valid_mass, w.max_valid_mass
        );
        if let Some(table) = &w.table {
            for r in table {
                let _ = writeln!(
                    out,
                    "  B_{}[{}] x G_{} = {}  valid mass {:.6}",
                    r.held_choice,
                    r.element,
                    r.coupled_choice,
                    r.product.ket_string(),
                    r.valid_mass
                );
            }
        }
        let d = &self.discrimination;
        let _ = writeln!(
            out,
            "discrimination: chance {:.6}, helstrom(rho_0, rho_1) {:.6}, max pairwise helstrom {:.6}, PGM {:.6}",
            d.chance, d.helstrom_first_pair, d.helstrom_max_pair, d.pgm_uniform
        );
        let _ = writeln!(out);
        for c in &self.checks {
            let _ = writeln!(out, "[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
        }
        out
    }
}

/// Runs the whole battery: cheat acceptance, K-block fidelity, the wrong
/// coupling table, Bob's strategies, Helstrom/PGM bounds and the p_S sweep.
pub fn run_analysis(
    scheme: &CommitmentScheme,
    config: &AnalysisConfig,
) -> Result<AnalysisReport, AnalysisError> {
    let m = scheme.num_choices();
    let seed = config.seed;
    let trials = config.trials;

    let mut cheat_values = Vec::new();
    for c in 0..m {
        for k in 0..scheme.set(c).len() {
            for claim in (0..m).filter(|&x| x != c) {
                cheat_values.push(alice_cheat_acceptance(scheme, c, k, claim)?);
            }
        }
    }
    let alice_cheat = CheatSummary {
        configurations: cheat_values.len(),
        min: cheat_values.iter().copied().fold(f64::INFINITY, f64::min),
        max: cheat_values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        sample: alice_cheat_report(scheme, 0, 1, trials, derive_seed(seed, 1))?,
    };

    let block_fidelity = (1..=config.max_blocks)
        .map(|k| {
            Ok(BlockRow {
                blocks: k,
                expected: 0.5f64.powi(k as i32),
                report: block_cheat_report(scheme, k, trials, derive_seed(seed, 100 + k as u64))?,
            })
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;

    let table = bob_wrong_coupling_table(scheme);
    let wrong_coupling = WrongCouplingSummary {
        rows: table.len(),
        min_valid_mass: table.iter().map(|r| r.valid_mass).fold(f64::INFINITY, f64::min),
        max_valid_mass: table.iter().map(|r| r.valid_mass).fold(f64::NEG_INFINITY, f64::max),
        mean_acceptance: wrong_coupling_acceptance(scheme),
        table: (table.len() <= 64).then_some(table),
    };

    let strategies = [Strategy::DeclarePriorGuess, Strategy::UpdateOnReject]
        .iter()
        .enumerate()
        .map(|(i, &s)| bob_premature_strategy(scheme, s, trials, derive_seed(seed, 200 + i as u64)))
        .collect::<Vec<_>>();

    let ensembles = scheme_ensembles(scheme);
    let mut helstrom_max = 0.0f64;
    for i in 0..m {
        for j in i + 1..m {
            helstrom_max = helstrom_max.max(helstrom_bound(&ensembles[i], &ensembles[j])?);
        }
    }
    let discrimination = DiscriminationSummary {
        chance: 1.0 / m as f64,
        helstrom_first_pair: helstrom_bound(&ensembles[0], &ensembles[1])?,
        helstrom_max_pair: helstrom_max,
        pgm_uniform: pgm_success(&ensembles, &vec![1.0 / m as f64; m])?,
    };

    let s_protocol = s_protocol_sweep(scheme, config.sweep_points, trials, derive_seed(seed, 300))?;

    let mc_ok = std::iter::once(&alice_cheat.sample)
        .chain(block_fidelity.iter().map(|b| &b.report))
        .chain(strategies.iter())
        .chain(s_protocol.iter())
        .all(CheatReport::passed_monte_carlo);
    let checks = vec![
        ReportCheck {
            name: "alice-cheat-acceptance-is-one-half".into(),
            passed: (alice_cheat.min - 0.5).abs() < NORM_TOL && (alice_cheat.max - 0.5).abs() < NORM_TOL,
        },
        ReportCheck {
            name: "block-fidelity-is-2^-K".into(),
            passed: block_fidelity
                .iter()
                .all(|b| (b.report.exact - b.expected).abs() < NORM_TOL),
        },
        ReportCheck {
            name: "wrong-coupling-mass-is-one-half".into(),
            passed: (wrong_coupling.min_valid_mass - 0.5).abs() < NORM_TOL
                && (wrong_coupling.max_valid_mass - 0.5).abs() < NORM_TOL,
        },
        ReportCheck {
            name: "helstrom-at-least-chance".into(),
            passed: discrimination.helstrom_max_pair >= 0.5 - NORM_TOL,
        },
        ReportCheck {
            name: "s-protocol-monotone".into(),
            passed: s_protocol.windows(2).all(|w| w[1].exact >= w[0].exact - NORM_TOL),
        },
        ReportCheck {
            name: "monte-carlo-within-3-sigma".into(),
            passed: mc_ok,
        },
    ];

    let params = scheme.params();
    Ok(AnalysisReport {
        scheme: SchemeSummary {
            n: params.n(),
            preset: params.preset().to_string(),
            masks: params.masks().iter().map(|d| format!("{d:#x}")).collect(),
            scheme_hash: scheme.scheme_hash().to_owned(),
        },
        seed,
        trials,
        alice_cheat,
        block_fidelity,
        wrong_coupling,
        strategies,
        discrimination,
        s_protocol,
        checks,
    })
}
