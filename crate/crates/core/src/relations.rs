//! Polynomial-level identity checks: the pairwise relation, the
//! non-nearest-neighbor recurrence, construction-path independence, and the
//! six contiguity/step relations linking the tables at `beta` and
//! `beta ± 1`. Every comparison is an exact equality of polynomials.

use crate::error::CoreError;
use crate::index::{enumerate_up_to, MultiIndex};
use crate::meixner::{first_level_closed_form, MeixnerTable};
use crate::params::Params;
use crate::poly::PolyX;
use crate::rational::Rational;
use crate::report::RelationReport;

fn one() -> Rational {
    Rational::one()
}

fn validate_index(table: &MeixnerTable, n: &MultiIndex) -> Result<(), CoreError> {
    if n.len() != table.params().r() {
        return Err(CoreError::IndexLengthMismatch {
            expected: table.params().r(),
            found: n.len(),
        });
    }
    Ok(())
}

fn validate_direction(table: &MeixnerTable, i: usize) -> Result<(), CoreError> {
    let r = table.params().r();
    if !(1..=r).contains(&i) {
        return Err(CoreError::DirectionOutOfRange { i, r });
    }
    Ok(())
}

/// `M_{e_i}` against its closed form `x - c_i beta/(1-c_i)`.
pub fn check_first_level(table: &MeixnerTable, i: usize) -> Result<RelationReport, CoreError> {
    validate_direction(table, i)?;
    let built = table.poly(&MultiIndex::unit(table.params().r(), i));
    let closed = first_level_closed_form(table.params(), i);
    Ok(RelationReport::compare(
        "first-level-closed-form",
        format!("{} i={}", table.params().tag(), i),
        built.as_ref(),
        &closed,
    ))
}

/// Pairwise relation between the two raised neighbours:
/// `M_{n+e_i} - M_{n+e_j} = (beta+|n|)(c_j-c_i)/((1-c_i)(1-c_j)) M_n`.
pub fn check_pairwise(
    table: &MeixnerTable,
    n: &MultiIndex,
    i: usize,
    j: usize,
) -> Result<RelationReport, CoreError> {
    validate_index(table, n)?;
    validate_direction(table, i)?;
    validate_direction(table, j)?;
    if i == j {
        return Err(CoreError::EqualDirections { i });
    }
    let p = table.params();
    let (ci, cj) = (p.c(i), p.c(j));
    let lhs = &*table.poly(&n.inc(i)) - &*table.poly(&n.inc(j));
    let coeff = (p.beta() + &Rational::from(n.total())) * (cj - ci)
        / ((one() - ci) * (one() - cj));
    let rhs = table.poly(n).scale(&coeff);
    Ok(RelationReport::compare(
        "pairwise",
        format!("{} n={} i={} j={}", p.tag(), n, i, j),
        &lhs,
        &rhs,
    ))
}

/// Reading of the cross-term summation range in the non-nearest-neighbor
/// recurrence: the full range `k = 1..r` (whose `k = i` term degenerates to a
/// diagonal contribution), or the range excluding `k = i`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CrossTermRange {
    IncludeI,
    ExcludeI,
}

impl CrossTermRange {
    pub fn label(self) -> &'static str {
        match self {
            CrossTermRange::IncludeI => "k-equals-i-included",
            CrossTermRange::ExcludeI => "k-not-equal-i",
        }
    }
}

/// Non-nearest-neighbor recurrence, under the chosen reading of the
/// cross-term range:
///
/// ```text
/// x M_n = M_{n+e_i} + (c_i beta + |n|)/(1-c_i) M_n
///         + sum_k c_k/(1-c_k) n_k M_{n+e_i-e_k}
///         + sum_k c_k/((1-c_i)(1-c_k)) n_k (beta+|n|-1) M_{n-e_k}
/// ```
pub fn check_non_nearest(
    table: &MeixnerTable,
    n: &MultiIndex,
    i: usize,
    variant: CrossTermRange,
) -> Result<RelationReport, CoreError> {
    validate_index(table, n)?;
    validate_direction(table, i)?;
    let p = table.params();
    let ci = p.c(i);
    let beta = p.beta();
    let total = Rational::from(n.total());

    let lhs = &PolyX::x() * &*table.poly(n);

    let diag = (ci * beta + &total) / (one() - ci);
    let mut rhs = &*table.poly(&n.inc(i)) + &table.poly(n).scale(&diag);
    for k in 1..=p.r() {
        if k == i && variant == CrossTermRange::ExcludeI {
            continue;
        }
        if let Some(shifted) = n.inc(i).dec(k) {
            let nk = Rational::from(n.get(k));
            if nk.is_zero() {
                continue;
            }
            let coeff = p.c(k) / (one() - p.c(k)) * nk;
            rhs = &rhs + &table.poly(&shifted).scale(&coeff);
        }
    }
    for k in 1..=p.r() {
        if let Some(down) = n.dec(k) {
            let ck = p.c(k);
            let coeff = ck / ((one() - ci) * (one() - ck))
                * Rational::from(n.get(k))
                * (beta + &total - one());
            rhs = &rhs + &table.poly(&down).scale(&coeff);
        }
    }
    Ok(RelationReport::compare(
        "non-nearest",
        format!("{} n={} i={} variant={}", p.tag(), n, i, variant.label()),
        &lhs,
        &rhs,
    ))
}

/// Construction-path independence at `n`: every direction whose coordinate is
/// nonzero, used as the last recurrence step, must produce the same
/// polynomial; additionally explicit multi-step walks must agree.
pub fn check_path_independence(
    table: &MeixnerTable,
    n: &MultiIndex,
    paths: &[Vec<usize>],
) -> Result<RelationReport, CoreError> {
    validate_index(table, n)?;
    let canonical = table.poly(n);
    let instance = format!("{} n={}", table.params().tag(), n);
    for path in paths {
        let counts: MultiIndex = {
            let mut v = vec![0u32; table.params().r()];
            for &d in path {
                if !(1..=table.params().r()).contains(&d) {
                    return Err(CoreError::DirectionOutOfRange {
                        i: d,
                        r: table.params().r(),
                    });
                }
                v[d - 1] += 1;
            }
            MultiIndex::new(v)
        };
        if &counts != n {
            return Err(CoreError::Invalid(format!(
                "path {path:?} ends at {counts}, not at {n}"
            )));
        }
        let walked = table.poly_along_path(path)?;
        if walked != *canonical {
            return Ok(RelationReport::new(
                "recurrence-path",
                format!("{instance} path={path:?}"),
                false,
                walked.to_string(),
                canonical.to_string(),
            ));
        }
    }
    Ok(RelationReport::new(
        "recurrence-path",
        format!("{instance} paths={}", paths.len()),
        true,
        canonical.to_string(),
        canonical.to_string(),
    ))
}

/// The six contiguity/step relations connecting `beta` with `beta + 1` or
/// `beta - 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StepRelation {
    Backward1,
    Forward1,
    Backward2,
    Step2,
    Raising,
    Lowering,
}

impl StepRelation {
    pub const ALL: [StepRelation; 6] = [
        StepRelation::Backward1,
        StepRelation::Forward1,
        StepRelation::Backward2,
        StepRelation::Step2,
        StepRelation::Raising,
        StepRelation::Lowering,
    ];

    pub fn label(self) -> &'static str {
        match self {
            StepRelation::Backward1 => "backward1",
            StepRelation::Forward1 => "forward1",
            StepRelation::Backward2 => "backward2",
            StepRelation::Step2 => "step2",
            StepRelation::Raising => "raising",
            StepRelation::Lowering => "lowering",
        }
    }

    pub fn from_label(s: &str) -> Option<StepRelation> {
        StepRelation::ALL.into_iter().find(|k| k.label() == s)
    }

    /// Whether the relation singles out a direction `i`.
    pub fn needs_direction(self) -> bool {
        matches!(
            self,
            StepRelation::Backward1 | StepRelation::Backward2 | StepRelation::Raising
        )
    }

    /// Whether the relation reads the table at `beta - 1`.
    pub fn needs_beta_down(self) -> bool {
        matches!(self, StepRelation::Forward1 | StepRelation::Step2)
    }
}

/// The `beta`, `beta + 1`, and (when valid) `beta - 1` tables for one
/// parameter set, shared across exhaustive relation runs.
pub struct SiblingTables {
    pub base: MeixnerTable,
    pub up: MeixnerTable,
    pub down: Option<MeixnerTable>,
}

impl SiblingTables {
    pub fn new(params: &Params) -> Result<SiblingTables, CoreError> {
        let up = MeixnerTable::new(params.with_beta_shift(1)?);
        let down = params.with_beta_shift(-1).ok().map(MeixnerTable::new);
        Ok(SiblingTables {
            base: MeixnerTable::new(params.clone()),
            up,
            down,
        })
    }

    /// Same, but with the corruption hook armed on the base table.
    pub fn new_corrupted(params: &Params) -> Result<SiblingTables, CoreError> {
        let mut t = SiblingTables::new(params)?;
        t.base = MeixnerTable::new_corrupted(params.clone());
        Ok(t)
    }

    fn down(&self, relation: StepRelation) -> Result<&MeixnerTable, CoreError> {
        self.down.as_ref().ok_or_else(|| CoreError::BetaShiftOutOfRange {
            relation: relation.label().to_string(),
            beta: self.base.params().beta().clone(),
        })
    }
}

/// Check one step relation at the index `n` (direction `i` where needed).
pub fn check_step_relation(
    tables: &SiblingTables,
    kind: StepRelation,
    n: &MultiIndex,
    i: Option<usize>,
) -> Result<RelationReport, CoreError> {
    let base = &tables.base;
    let p = base.params();
    validate_index(base, n)?;
    let i = match (kind.needs_direction(), i) {
        (true, Some(i)) => {
            validate_direction(base, i)?;
            i
        }
        (true, None) => {
            return Err(CoreError::NeedsDirection {
                relation: kind.label().to_string(),
            })
        }
        (false, _) => 1,
    };
    let beta = p.beta();
    let total = Rational::from(n.total());
    let instance = if kind.needs_direction() {
        format!("{} n={} i={}", p.tag(), n, i)
    } else {
        format!("{} n={}", p.tag(), n)
    };

    let (lhs, rhs) = match kind {
        // x M_n^{b+1}(x-1) = M_{n+e_i}^b(x) + c_i/(1-c_i) (b+|n|) M_n^b(x)
        StepRelation::Backward1 => {
            let lhs = &PolyX::x() * &tables.up.poly(n).shift(&-one());
            let coeff = p.c(i) / (one() - p.c(i)) * (beta + &total);
            let rhs = &*base.poly(&n.inc(i)) + &base.poly(n).scale(&coeff);
            (lhs, rhs)
        }
        // M_n^{b-1}(x+1) = M_n^b(x) + sum_k n_k/(1-c_k) M_{n-e_k}^b(x)
        StepRelation::Forward1 => {
            let down = tables.down(kind)?;
            let lhs = down.poly(n).shift(&one());
            let mut rhs = base.poly(n).as_ref().clone();
            for k in 1..=p.r() {
                if let Some(dn) = n.dec(k) {
                    let coeff = Rational::from(n.get(k)) / (one() - p.c(k));
                    rhs = &rhs + &base.poly(&dn).scale(&coeff);
                }
            }
            (lhs, rhs)
        }
        // (x+b) M_n^{b+1}(x) = M_{n+e_i}^b(x) + (b+|n|)/(1-c_i) M_n^b(x)
        StepRelation::Backward2 => {
            let x_plus_beta = PolyX::from_coeffs(vec![beta.clone(), one()]);
            let lhs = &x_plus_beta * &*tables.up.poly(n);
            let coeff = (beta + &total) / (one() - p.c(i));
            let rhs = &*base.poly(&n.inc(i)) + &base.poly(n).scale(&coeff);
            (lhs, rhs)
        }
        // M_n^{b-1}(x) = M_n^b(x) + sum_k c_k/(1-c_k) n_k M_{n-e_k}^b(x)
        StepRelation::Step2 => {
            let down = tables.down(kind)?;
            let lhs = down.poly(n).as_ref().clone();
            let mut rhs = base.poly(n).as_ref().clone();
            for k in 1..=p.r() {
                if let Some(dn) = n.dec(k) {
                    let coeff = p.c(k) / (one() - p.c(k)) * Rational::from(n.get(k));
                    rhs = &rhs + &base.poly(&dn).scale(&coeff);
                }
            }
            (lhs, rhs)
        }
        // x M_n^{b+1}(x-1) - c_i (x+b) M_n^{b+1}(x) = (1-c_i) M_{n+e_i}^b(x)
        StepRelation::Raising => {
            let up_n = tables.up.poly(n);
            let x_plus_beta = PolyX::from_coeffs(vec![beta.clone(), one()]);
            let lhs = &(&PolyX::x() * &up_n.shift(&-one()))
                - &(&x_plus_beta * &*up_n).scale(p.c(i));
            let rhs = base.poly(&n.inc(i)).scale(&(one() - p.c(i)));
            (lhs, rhs)
        }
        // M_n^b(x+1) - M_n^b(x) = sum_k n_k M_{n-e_k}^{b+1}(x)
        StepRelation::Lowering => {
            let m = base.poly(n);
            let lhs = &m.shift(&one()) - &*m;
            let mut rhs = PolyX::zero();
            for k in 1..=p.r() {
                if let Some(dn) = n.dec(k) {
                    rhs = &rhs + &tables.up.poly(&dn).scale(&Rational::from(n.get(k)));
                }
            }
            (lhs, rhs)
        }
    };
    Ok(RelationReport::compare(kind.label(), instance, &lhs, &rhs))
}

/// Run a step relation exhaustively over `|n| <= max_total` (and all
/// applicable directions), returning one report per instance.
pub fn check_step_relation_all(
    params: &Params,
    kind: StepRelation,
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    if kind.needs_beta_down() && params.with_beta_shift(-1).is_err() {
        return Err(CoreError::BetaShiftOutOfRange {
            relation: kind.label().to_string(),
            beta: params.beta().clone(),
        });
    }
    let tables = SiblingTables::new(params)?;
    let mut out = Vec::new();
    for n in enumerate_up_to(params.r(), max_total) {
        if kind.needs_direction() {
            for i in 1..=params.r() {
                out.push(check_step_relation(&tables, kind, &n, Some(i))?);
            }
        } else {
            out.push(check_step_relation(&tables, kind, &n, None)?);
        }
    }
    Ok(out)
}

/// Exhaustive pairwise checks over `|n| <= max_total` and all ordered pairs.
pub fn check_pairwise_all(
    table: &MeixnerTable,
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let r = table.params().r();
    let mut out = Vec::new();
    for n in enumerate_up_to(r, max_total) {
        for i in 1..=r {
            for j in 1..=r {
                if i != j {
                    out.push(check_pairwise(table, &n, i, j)?);
                }
            }
        }
    }
    Ok(out)
}

/// Exhaustive non-nearest checks for one variant.
pub fn check_non_nearest_all(
    table: &MeixnerTable,
    variant: CrossTermRange,
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let r = table.params().r();
    let mut out = Vec::new();
    for n in enumerate_up_to(r, max_total) {
        for i in 1..=r {
            out.push(check_non_nearest(table, &n, i, variant)?);
        }
    }
    Ok(out)
}

/// Last-step agreement at every index with at least two nonzero coordinates:
/// stepping into `n` from `n - e_i` must give the canonical entry for every
/// admissible `i`. Combined with induction over levels this is full path
/// independence; explicit multi-step walks are exercised separately.
pub fn check_last_step_agreement(
    table: &MeixnerTable,
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let r = table.params().r();
    let mut out = Vec::new();
    for n in enumerate_up_to(r, max_total) {
        let dirs: Vec<usize> = (1..=r).filter(|&i| n.get(i) > 0).collect();
        if dirs.len() < 2 {
            continue;
        }
        let canonical = table.poly(&n);
        for &i in &dirs {
            let m = n.dec(i).expect("direction is nonzero");
            // Rebuild by one step in direction i using canonical lower entries.
            let mut path: Vec<usize> = Vec::new();
            for k in 1..=r {
                for _ in 0..m.get(k) {
                    path.push(k);
                }
            }
            path.push(i);
            let stepped = table.poly_along_path(&path)?;
            out.push(RelationReport::compare(
                "recurrence-path",
                format!("{} n={} last-step i={}", table.params().tag(), n, i),
                &stepped,
                canonical.as_ref(),
            ));
        }
    }
    Ok(out)
}
