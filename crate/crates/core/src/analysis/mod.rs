//! Binding and concealment quantification.
//!
//! Exact values come from Born probabilities; every stochastic scenario can
//! be cross-checked by a seeded Monte Carlo run that drives the actual
//! verification path.

mod cheat;
mod discrimination;
mod montecarlo;
mod report;
mod s_protocol;
mod strategies;

pub use cheat::{
    alice_cheat_acceptance, alice_cheat_report, block_cheat_fidelity, block_cheat_report,
    max_cheat_acceptance, reveal_acceptance, CheatReport, ReportParams,
};
pub use discrimination::{
    helstrom_bound, helstrom_bound_with_priors, pgm_success, scheme_ensembles, EnsembleMixture,
};
pub use montecarlo::{estimate, McEstimate, CHUNK};
pub use report::{
    run_analysis, AnalysisConfig, AnalysisReport, BlockRow, CheatSummary, DiscriminationSummary,
    ReportCheck, SchemeSummary, WrongCouplingSummary,
};
pub use s_protocol::{s_protocol_analysis, s_protocol_exact, s_protocol_sweep};
pub use strategies::{
    bob_premature_strategy, bob_wrong_coupling_table, premature_success_exact,
    wrong_coupling_acceptance, Strategy, WrongCouplingRow,
};
