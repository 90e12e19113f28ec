use serde::Serialize;

use crate::error::SchemeError;
use crate::quantum::StateVector;
use crate::scheme::{stabilizer_audit, CommitmentScheme, CommitmentSet, SchemeParams, SetS};
use crate::tolerance::{NORM_TOL, ORTHO_TOL};

/// Non-orthogonal partners of one element inside one foreign set.
#[derive(Clone, Debug, Serialize)]
pub struct OverlapEntry {
    pub choice: usize,
    pub element: usize,
    pub other_choice: usize,
    /// `(element index in the other set, |inner|)` for every overlap above tolerance.
    pub partners: Vec<(usize, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverlapAudit {
    pub entries: Vec<OverlapEntry>,
}

impl OverlapAudit {
    /// Every element has exactly two partners per foreign set, each at 1/2.
    pub fn two_partners_at_half(&self) -> bool {
        self.entries.iter().all(|e| {
            e.choice == e.other_choice
                || (e.partners.len() == 2
                    && e.partners.iter().all(|(_, m)| (m - 0.5).abs() < NORM_TOL))
        })
    }

    /// Within-set entries carry only the element itself.
    pub fn within_set_orthogonal(&self) -> bool {
        self.entries
            .iter()
            .filter(|e| e.choice == e.other_choice)
            .all(|e| {
                e.partners.len() == 1
                    && e.partners[0].0 == e.element
                    && (e.partners[0].1 - 1.0).abs() < NORM_TOL
            })
    }
}

fn overlaps(state: &StateVector, set: &CommitmentSet) -> Vec<(usize, f64)> {
    set.elements
        .iter()
        .enumerate()
        .filter_map(|(k, e)| {
            let m = state.inner(&e.state).map(|z| z.norm()).unwrap_or(0.0);
            (m > ORTHO_TOL).then_some((k, m))
        })
        .collect()
}

/// For each element of each set, lists its non-orthogonal elements in
/// every set (including its own, as a within-set orthogonality control).
pub fn cross_set_overlap_audit(sets: &[CommitmentSet]) -> OverlapAudit {
    let mut entries = Vec::new();
    for set in sets {
        for (k, e) in set.elements.iter().enumerate() {
            for other in sets {
                entries.push(OverlapEntry {
                    choice: set.choice,
                    element: k,
                    other_choice: other.choice,
                    partners: overlaps(&e.state, other),
                });
            }
        }
    }
    OverlapAudit { entries }
}

/// Overlaps of each computational state in S with each B_c.
#[derive(Clone, Debug, Serialize)]
pub struct SOverlapEntry {
    pub basis_index: usize,
    pub choice: usize,
    pub partners: Vec<(usize, f64)>,
}

pub fn s_overlap_audit(set_s: &SetS, sets: &[CommitmentSet]) -> Vec<SOverlapEntry> {
    let mut out = Vec::new();
    for (x, s) in set_s.elements.iter().enumerate() {
        for set in sets {
            out.push(SOverlapEntry {
                basis_index: x,
                choice: set.choice,
                partners: overlaps(s, set),
            });
        }
    }
    out
}

/// One named audit check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Informational checks are reported but never fail the audit.
    pub informational: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SchemeAudit {
    pub n: Option<usize>,
    pub checks: Vec<CheckResult>,
}

impl SchemeAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }
}

fn check(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        informational: false,
        detail: detail.into(),
    }
}

/// Names a parameter violation so audits can report it instead of bailing.
pub fn violation_name(err: &SchemeError) -> &'static str {
    match err {
        SchemeError::UnsupportedN(_) => "n-range",
        SchemeError::MaskCount { .. } => "mask-count",
        SchemeError::ZeroMask(_) => "mask-nonzero",
        SchemeError::MaskTooWide { .. } => "mask-width",
        SchemeError::DuplicateMask { .. } => "mask-injectivity",
        _ => "scheme-construction",
    }
}

/// Runs every structural check on an already-validated scheme.
pub fn audit_scheme(scheme: &CommitmentScheme) -> SchemeAudit {
    let params = scheme.params();
    let sets = scheme.sets();
    let m = params.num_choices();
    let mut checks = vec![check("parameters", true, params.to_descriptor().trim_end().replace('\n', "; "))];

    // set shape: 2^N two-term elements covering every basis string once
    let mut shape_ok = true;
    let mut shape_detail = String::from("ok");
    for set in sets {
        let mut covered = vec![0u8; 1 << params.alice_qubits()];
        for e in &set.elements {
            covered[e.representative] += 1;
            covered[e.partner] += 1;
            if e.state.support().len() != 2 {
                shape_ok = false;
                shape_detail = format!("B_{} has a non two-term element", set.choice);
            }
        }
        if set.len() != m || covered.iter().any(|&c| c != 1) {
            shape_ok = false;
            shape_detail = format!("B_{} does not cover each basis string once", set.choice);
        }
    }
    checks.push(check("set-shape", shape_ok, shape_detail));

    let overlap = cross_set_overlap_audit(sets);
    checks.push(check(
        "within-set-orthogonality",
        overlap.within_set_orthogonal(),
        format!("{} sets of {} elements", m, m),
    ));
    checks.push(check(
        "cross-set-two-partners-at-half",
        overlap.two_partners_at_half(),
        "every element has exactly 2 partners per foreign set with |overlap| = 1/2",
    ));

    // {G_c} Gram matrix
    let mut gram_err = 0.0f64;
    for a in &scheme.agreement().per_choice {
        for b in &scheme.agreement().per_choice {
            let g = a.reveal_state.state.inner(&b.reveal_state.state).unwrap_or_default();
            let want = if a.choice == b.choice { 1.0 } else { 0.0 };
            gram_err = gram_err.max((g.re - want).abs().max(g.im.abs()));
        }
    }
    checks.push(check(
        "reveal-states-orthonormal",
        gram_err < NORM_TOL,
        format!("max Gram deviation {gram_err:.3e}"),
    ));

    let mut stab_ok = true;
    let mut stab_detail = Vec::new();
    for rb in &scheme.agreement().per_choice {
        let report = stabilizer_audit(&rb.reveal_state);
        if !report.passed() {
            stab_ok = false;
            stab_detail.push(format!("G_{} fails", rb.choice));
        }
    }
    checks.push(check(
        "stabilizer-audit",
        stab_ok,
        if stab_ok {
            "X^N and even-weight Z masks stabilize every G_c; odd-weight Z masks average 0".into()
        } else {
            stab_detail.join(", ")
        },
    ));

    // all 2^(2N) valid products across choices pairwise orthogonal
    let products: Vec<&StateVector> = scheme
        .agreement()
        .per_choice
        .iter()
        .flat_map(|rb| rb.valid_products.iter())
        .collect();
    let mut worst = 0.0f64;
    for i in 0..products.len() {
        let support = products[i].support();
        for j in i + 1..products.len() {
            let ov: num_complex::Complex64 = support
                .iter()
                .map(|&k| products[i].amplitude(k).conj() * products[j].amplitude(k))
                .sum();
            worst = worst.max(ov.norm());
        }
    }
    checks.push(check(
        "valid-products-orthogonal",
        worst < ORTHO_TOL,
        format!("{} products, max overlap {worst:.3e}", products.len()),
    ));

    // honest reveal: element k lands on outcome k with certainty
    let mut complete = true;
    for (c, set) in sets.iter().enumerate() {
        let rb = scheme.agreement().basis(c);
        for k in 0..set.len() {
            let product = set.element(k).tensor(&rb.reveal_state.state);
            let p = rb.basis.born_distribution(&product).unwrap_or_default();
            if p.get(k).map_or(true, |pk| (pk - 1.0).abs() > NORM_TOL) {
                complete = false;
            }
        }
    }
    checks.push(check(
        "reveal-completeness",
        complete,
        "honest products measure to their own outcome with probability 1",
    ));

    let s_entries = s_overlap_audit(scheme.set_s(), sets);
    let max_partners = s_entries.iter().map(|e| e.partners.len()).max().unwrap_or(0);
    let min_partners = s_entries.iter().map(|e| e.partners.len()).min().unwrap_or(0);
    checks.push(CheckResult {
        name: "set-s-partners-per-b-set".into(),
        passed: min_partners == 2 && max_partners == 2,
        informational: true,
        detail: if min_partners == max_partners {
            format!("each computational state overlaps exactly {min_partners} element(s) per B_c")
        } else {
            format!("each computational state overlaps {min_partners} to {max_partners} elements per B_c")
        },
    });

    SchemeAudit {
        n: Some(params.n()),
        checks,
    }
}

/// Audit entry point that also turns parameter errors into a failing check.
pub fn audit_params(params: Result<SchemeParams, SchemeError>) -> SchemeAudit {
    match params.and_then(CommitmentScheme::new) {
        Ok(scheme) => audit_scheme(&scheme),
        Err(err) => SchemeAudit {
            n: None,
            checks: vec![check(violation_name(&err), false, err.to_string())],
        },
    }
}
