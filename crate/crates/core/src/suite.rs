//! Desk-scale battery running every identity check the crate exports.
//!
//! [`run_all`] executes the full battery in a fixed order over the built-in
//! parameter sets and returns one [`RelationReport`] per checked instance;
//! identical inputs produce identical report sequences. [`run_relation`]
//! runs a single named section. The battery is sized to finish in seconds
//! while still exercising every relation away from trivial cases.
//!
//! All sections must pass on a correct build. The deliberately corrupted
//! mode (`corrupt: true`) perturbs one recurrence coefficient inside table
//! construction, which makes the construction-facing sections fail and
//! demonstrates that the battery actually constrains the implementation.

use crate::diffeq::{self, DiffEqSemantics};
use crate::error::CoreError;
use crate::fock::checks as fock;
use crate::genfun;
use crate::index::MultiIndex;
use crate::meixner::MeixnerTable;
use crate::moments;
use crate::params::Params;
use crate::rational::Rational;
use crate::relations::{self, CrossTermRange, SiblingTables, StepRelation};
use crate::report::RelationReport;

/// Relation labels accepted by [`run_relation`], in battery order.
pub const RELATIONS: &[&str] = &[
    "recurrence-path",
    "pairwise",
    "non-nearest",
    "backward1",
    "forward1",
    "backward2",
    "step2",
    "raising",
    "lowering",
    "diffeq-x",
    "diffeq-beta",
    "orthogonality",
    "genfun",
    "fock-eigen",
    "fock-commutator",
    "fock-weak",
    "fock-shift",
    "fock-conjugation",
    "su11",
];

/// Sizes used by the battery.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Bound on `|n|` for polynomial-side checks.
    pub max_total: u32,
    /// Truncation degree for operator-model checks with one or two weights.
    pub n_max: u32,
    /// Truncation degree for operator-model checks with three weights.
    pub n_max_r3: u32,
    /// Generating-function expansion order.
    pub order: u32,
    /// Build deliberately corrupted recurrence tables (test hook).
    pub corrupt: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_total: 5,
            n_max: 8,
            n_max_r3: 6,
            order: 6,
            corrupt: false,
        }
    }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

/// The three canonical parameter sets the battery runs over.
pub fn default_param_sets() -> Vec<Params> {
    vec![
        Params::new(q(1, 1), vec![q(1, 2)]).expect("valid built-in set"),
        Params::new(q(3, 2), vec![q(1, 3), q(1, 2)]).expect("valid built-in set"),
        Params::new(q(2, 1), vec![q(1, 5), q(1, 3), q(1, 2)]).expect("valid built-in set"),
    ]
}

/// Single-weight instances for the su(1,1) section.
pub fn su11_param_sets() -> Vec<Params> {
    vec![
        Params::new(q(1, 1), vec![q(1, 2)]).expect("valid built-in set"),
        Params::new(q(3, 1), vec![q(1, 3)]).expect("valid built-in set"),
    ]
}

/// Single-weight instance with `beta = 2`, used where a `beta - 1` table
/// must exist.
fn rank_one_shifted() -> Params {
    Params::new(q(2, 1), vec![q(1, 2)]).expect("valid built-in set")
}

/// Five distinct `beta` samples for the parameter difference equation.
fn beta_samples() -> Vec<Rational> {
    vec![q(1, 1), q(3, 2), q(2, 1), q(5, 2), q(7, 3)]
}

/// Rational evaluation points used by the operator-model sections.
pub fn eval_points() -> Vec<Rational> {
    vec![q(0, 1), q(2, 1), q(7, 2)]
}

fn table(params: &Params, corrupt: bool) -> MeixnerTable {
    if corrupt {
        MeixnerTable::new_corrupted(params.clone())
    } else {
        MeixnerTable::new(params.clone())
    }
}

fn siblings(params: &Params, corrupt: bool) -> Result<SiblingTables, CoreError> {
    if corrupt {
        SiblingTables::new_corrupted(params)
    } else {
        SiblingTables::new(params)
    }
}

fn fock_degree(cfg: &SuiteConfig, r: usize) -> u32 {
    if r >= 3 {
        cfg.n_max_r3
    } else {
        cfg.n_max
    }
}

/// All distinct step orderings that build up the index `n`.
pub fn all_paths(n: &MultiIndex) -> Vec<Vec<usize>> {
    fn rec(remaining: &mut Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.iter().all(|&k| k == 0) {
            out.push(cur.clone());
            return;
        }
        for d in 0..remaining.len() {
            if remaining[d] > 0 {
                remaining[d] -= 1;
                cur.push(d + 1);
                rec(remaining, cur, out);
                cur.pop();
                remaining[d] += 1;
            }
        }
    }
    let mut remaining = n.entries().to_vec();
    let mut out = Vec::new();
    rec(&mut remaining, &mut Vec::new(), &mut out);
    out
}

fn step_sections(cfg: &SuiteConfig, kind: StepRelation) -> Result<Vec<RelationReport>, CoreError> {
    let mut out = Vec::new();
    for params in default_param_sets() {
        if kind.needs_beta_down() && params.with_beta_shift(-1).is_err() {
            continue;
        }
        let tables = siblings(&params, cfg.corrupt)?;
        let bound = cfg.max_total.min(4);
        for n in crate::index::enumerate_up_to(params.r(), bound) {
            if kind.needs_direction() {
                for i in 1..=params.r() {
                    out.push(relations::check_step_relation(&tables, kind, &n, Some(i))?);
                }
            } else {
                out.push(relations::check_step_relation(&tables, kind, &n, None)?);
            }
        }
    }
    Ok(out)
}

/// Run one named battery section.
pub fn run_relation(relation: &str, cfg: &SuiteConfig) -> Result<Vec<RelationReport>, CoreError> {
    let sets = default_param_sets();
    let mut out = Vec::new();
    match relation {
        "recurrence-path" => {
            for params in &sets {
                let t = table(params, cfg.corrupt);
                for i in 1..=params.r() {
                    out.push(relations::check_first_level(&t, i)?);
                }
                out.extend(relations::check_last_step_agreement(&t, cfg.max_total)?);
                for n in crate::index::enumerate_up_to(params.r(), cfg.max_total) {
                    let nonzero_dirs = (1..=params.r()).filter(|&i| n.get(i) > 0).count();
                    if nonzero_dirs < 2 {
                        continue;
                    }
                    let paths = all_paths(&n);
                    out.push(relations::check_path_independence(&t, &n, &paths)?);
                }
            }
        }
        "pairwise" => {
            for params in &sets {
                if params.r() < 2 {
                    continue;
                }
                let t = table(params, cfg.corrupt);
                out.extend(relations::check_pairwise_all(&t, cfg.max_total)?);
            }
        }
        "non-nearest" => {
            for params in &sets {
                let t = table(params, cfg.corrupt);
                out.extend(relations::check_non_nearest_all(
                    &t,
                    CrossTermRange::IncludeI,
                    cfg.max_total,
                )?);
            }
        }
        "backward1" => out.extend(step_sections(cfg, StepRelation::Backward1)?),
        "forward1" => out.extend(step_sections(cfg, StepRelation::Forward1)?),
        "backward2" => out.extend(step_sections(cfg, StepRelation::Backward2)?),
        "step2" => out.extend(step_sections(cfg, StepRelation::Step2)?),
        "raising" => out.extend(step_sections(cfg, StepRelation::Raising)?),
        "lowering" => out.extend(step_sections(cfg, StepRelation::Lowering)?),
        "diffeq-x" => {
            for params in &sets {
                let t = table(params, cfg.corrupt);
                let r = params.r();
                let bound = if r == 1 { 4 } else { 3.min(cfg.max_total) };
                if r == 1 {
                    for semantics in DiffEqSemantics::ALL {
                        out.extend(diffeq::check_diffeq_x_all(
                            &t,
                            semantics,
                            &diffeq::ascending_order(1),
                            bound,
                        )?);
                    }
                } else {
                    let orders = if r == 2 {
                        vec![diffeq::ascending_order(r), diffeq::descending_order(r)]
                    } else {
                        vec![diffeq::ascending_order(r)]
                    };
                    for order in orders {
                        out.extend(diffeq::check_diffeq_x_all(
                            &t,
                            DiffEqSemantics::DegreeTracking,
                            &order,
                            bound,
                        )?);
                    }
                }
            }
        }
        "diffeq-beta" => {
            for beta in beta_samples() {
                let r1 = Params::new(beta.clone(), vec![q(1, 2)])?;
                out.extend(diffeq::check_diffeq_beta_all(
                    &r1,
                    DiffEqSemantics::DegreeTracking,
                    &diffeq::ascending_order(1),
                    4,
                )?);
                let r2 = Params::new(beta, vec![q(1, 3), q(1, 2)])?;
                out.extend(diffeq::check_diffeq_beta_all(
                    &r2,
                    DiffEqSemantics::DegreeTracking,
                    &diffeq::ascending_order(2),
                    3,
                )?);
            }
        }
        "orthogonality" => {
            for params in &sets {
                let t = table(params, cfg.corrupt);
                let bound = if params.r() >= 3 { 3 } else { cfg.max_total };
                out.extend(moments::check_orthogonality_all(&t, bound)?);
                // Cross-check one instance against direct truncated summation.
                let probe = MultiIndex::unit(params.r(), 1).inc(1);
                out.extend(moments::check_truncated_orthogonality(&t, &probe, 1, 60)?);
            }
        }
        "genfun" => {
            for params in &sets {
                let t = table(params, cfg.corrupt);
                let order = if params.r() >= 3 { 4 } else { cfg.order };
                out.extend(genfun::check_genfun(&t, order)?);
            }
        }
        "fock-eigen" => {
            for params in &sets {
                let n_max = fock_degree(cfg, params.r());
                out.extend(fock::check_eigen(params, n_max, &eval_points())?);
            }
        }
        "fock-commutator" => {
            for params in &sets {
                let n_max = fock_degree(cfg, params.r());
                out.extend(fock::check_commutator_all(params, n_max)?);
            }
        }
        "fock-weak" => {
            for params in &sets {
                if params.r() < 2 {
                    continue;
                }
                let n_max = fock_degree(cfg, params.r());
                out.extend(fock::check_weak_commute(params, n_max, &eval_points())?);
            }
        }
        "fock-shift" => {
            let r1 = rank_one_shifted();
            let r1_points = vec![q(0, 1), q(1, 1), q(3, 1)];
            out.extend(fock::check_shift_relations(&r1, cfg.n_max, &r1_points)?);
            for params in &sets {
                if params.with_beta_shift(-1).is_err() {
                    continue;
                }
                let n_max = fock_degree(cfg, params.r());
                out.extend(fock::check_shift_relations(params, n_max, &eval_points())?);
            }
        }
        "fock-conjugation" => {
            for params in &sets {
                let n_max = fock_degree(cfg, params.r());
                out.extend(fock::check_conjugation(params, n_max)?);
            }
        }
        "su11" => {
            for params in su11_param_sets() {
                out.extend(fock::su11_checks(&params, cfg.n_max)?);
            }
        }
        other => {
            return Err(CoreError::Invalid(format!("unknown relation '{other}'")));
        }
    }
    Ok(out)
}

/// Run every battery section in order, then the boundary-artifact and
/// normalized-basis checks that document the comparison contract.
pub fn run_all(cfg: &SuiteConfig) -> Result<Vec<RelationReport>, CoreError> {
    let mut out = Vec::new();
    for relation in RELATIONS {
        out.extend(run_relation(relation, cfg)?);
    }
    out.push(fock::check_boundary_artifact(2, cfg.n_max)?);
    for params in default_param_sets() {
        out.push(fock::check_normalized_basis(&params, 6)?);
    }
    Ok(out)
}

/// Whether a battery section applies to the given parameter set: the
/// pairwise sections need two weights, the `beta - 1` sections need
/// `beta > 1`, and the su(1,1) section is single-weight only.
pub fn relation_applies(params: &Params, relation: &str) -> bool {
    let beta_down_ok = params.with_beta_shift(-1).is_ok();
    match relation {
        "pairwise" | "fock-weak" => params.r() >= 2,
        "forward1" | "step2" | "fock-shift" => beta_down_ok,
        "su11" => params.r() == 1,
        _ => true,
    }
}

/// Run one named section against a single explicit parameter set.
///
/// Unlike [`run_relation`], which quietly skips parameter sets a section
/// does not apply to, this variant reports inapplicability as an error so
/// a caller asking for a specific combination gets a definite answer.
/// `"all"` runs every applicable section for the set (skipping the
/// inapplicable ones) followed by the boundary-artifact and
/// normalized-basis checks.
pub fn run_relation_for(
    params: &Params,
    relation: &str,
    cfg: &SuiteConfig,
) -> Result<Vec<RelationReport>, CoreError> {
    let r = params.r();
    let n_max = fock_degree(cfg, r);
    let mut out = Vec::new();
    match relation {
        "all" => {
            for relation in RELATIONS {
                if relation_applies(params, relation) {
                    out.extend(run_relation_for(params, relation, cfg)?);
                }
            }
            out.push(fock::check_boundary_artifact(r, n_max)?);
            out.push(fock::check_normalized_basis(params, n_max.min(6))?);
        }
        "recurrence-path" => {
            let t = table(params, cfg.corrupt);
            for i in 1..=r {
                out.push(relations::check_first_level(&t, i)?);
            }
            out.extend(relations::check_last_step_agreement(&t, cfg.max_total)?);
            for n in crate::index::enumerate_up_to(r, cfg.max_total) {
                let nonzero_dirs = (1..=r).filter(|&i| n.get(i) > 0).count();
                if nonzero_dirs < 2 {
                    continue;
                }
                out.push(relations::check_path_independence(&t, &n, &all_paths(&n))?);
            }
        }
        "pairwise" => {
            if r < 2 {
                return Err(CoreError::Invalid(
                    "the pairwise relation needs at least two weights (r >= 2)".into(),
                ));
            }
            out.extend(relations::check_pairwise_all(
                &table(params, cfg.corrupt),
                cfg.max_total,
            )?);
        }
        "non-nearest" => {
            out.extend(relations::check_non_nearest_all(
                &table(params, cfg.corrupt),
                CrossTermRange::IncludeI,
                cfg.max_total,
            )?);
        }
        "backward1" | "forward1" | "backward2" | "step2" | "raising" | "lowering" => {
            let kind = StepRelation::from_label(relation).expect("label is matched above");
            if kind.needs_beta_down() && params.with_beta_shift(-1).is_err() {
                return Err(CoreError::BetaShiftOutOfRange {
                    relation: relation.to_string(),
                    beta: params.beta().clone(),
                });
            }
            let tables = siblings(params, cfg.corrupt)?;
            let bound = cfg.max_total.min(4);
            for n in crate::index::enumerate_up_to(r, bound) {
                if kind.needs_direction() {
                    for i in 1..=r {
                        out.push(relations::check_step_relation(&tables, kind, &n, Some(i))?);
                    }
                } else {
                    out.push(relations::check_step_relation(&tables, kind, &n, None)?);
                }
            }
        }
        "diffeq-x" => {
            let t = table(params, cfg.corrupt);
            let bound = if r == 1 { 4 } else { 3.min(cfg.max_total) };
            if r == 1 {
                for semantics in DiffEqSemantics::ALL {
                    out.extend(diffeq::check_diffeq_x_all(
                        &t,
                        semantics,
                        &diffeq::ascending_order(1),
                        bound,
                    )?);
                }
            } else {
                let orders = if r == 2 {
                    vec![diffeq::ascending_order(r), diffeq::descending_order(r)]
                } else {
                    vec![diffeq::ascending_order(r)]
                };
                for order in orders {
                    out.extend(diffeq::check_diffeq_x_all(
                        &t,
                        DiffEqSemantics::DegreeTracking,
                        &order,
                        bound,
                    )?);
                }
            }
        }
        "diffeq-beta" => {
            let bound = if r == 1 { 4 } else { 3.min(cfg.max_total) };
            out.extend(diffeq::check_diffeq_beta_all(
                params,
                DiffEqSemantics::DegreeTracking,
                &diffeq::ascending_order(r),
                bound,
            )?);
        }
        "orthogonality" => {
            let t = table(params, cfg.corrupt);
            let bound = if r >= 3 { 3 } else { cfg.max_total };
            out.extend(moments::check_orthogonality_all(&t, bound)?);
            let probe = MultiIndex::unit(r, 1).inc(1);
            out.extend(moments::check_truncated_orthogonality(&t, &probe, 1, 60)?);
        }
        "genfun" => {
            let order = if r >= 3 { cfg.order.min(4) } else { cfg.order };
            out.extend(genfun::check_genfun(&table(params, cfg.corrupt), order)?);
        }
        "fock-eigen" => {
            out.extend(fock::check_eigen(params, n_max, &eval_points())?);
        }
        "fock-commutator" => {
            out.extend(fock::check_commutator_all(params, n_max)?);
        }
        "fock-weak" => {
            if r < 2 {
                return Err(CoreError::Invalid(
                    "weak commutativity needs at least two weights (r >= 2)".into(),
                ));
            }
            out.extend(fock::check_weak_commute(params, n_max, &eval_points())?);
        }
        "fock-shift" => {
            out.extend(fock::check_shift_relations(params, n_max, &eval_points())?);
        }
        "fock-conjugation" => {
            out.extend(fock::check_conjugation(params, n_max)?);
        }
        "su11" => {
            out.extend(fock::su11_checks(params, cfg.n_max)?);
        }
        other => {
            return Err(CoreError::Invalid(format!("unknown relation '{other}'")));
        }
    }
    Ok(out)
}
