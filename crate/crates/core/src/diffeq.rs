//! Higher-order difference equations satisfied by the polynomial families:
//! one of order `r + 1` in the variable `x`, and one of order `r + 1` in the
//! parameter `beta`.
//!
//! Each equation composes `r` first-order factors with an initial difference
//! operator. The factor coefficients admit two readings, implemented side by
//! side so their behaviour can be compared and recorded:
//!
//! * [`DiffEqSemantics::Literal`] keeps the additive parameter of every
//!   factor fixed (the `x`-equation uses `c_j (x + beta)` throughout, the
//!   `beta`-equation uses `beta' + |n|` at the running level `beta'`). This
//!   reading is exact for `r = 1` and for higher `r` holds only at indices
//!   concentrated on a single direction, and then only when the factor for
//!   that direction is applied first.
//! * [`DiffEqSemantics::DegreeTracking`] adjusts the additive parameter
//!   to the degree of the operand each factor acts on: multiplicative
//!   coefficient `c_j (x + beta + |n| - 1 - deg f)`, additive term
//!   `beta' + 1 + deg g`. Under this reading the factors commute and the
//!   equations hold identically for every multi-index.

use crate::error::CoreError;
use crate::index::{enumerate_up_to, MultiIndex};
use crate::meixner::MeixnerTable;
use crate::params::Params;
use crate::poly::PolyX;
use crate::rational::Rational;
use crate::report::RelationReport;

/// Reading of the factor coefficients; see the module documentation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiffEqSemantics {
    Literal,
    DegreeTracking,
}

impl DiffEqSemantics {
    pub const ALL: [DiffEqSemantics; 2] =
        [DiffEqSemantics::Literal, DiffEqSemantics::DegreeTracking];

    pub fn label(self) -> &'static str {
        match self {
            DiffEqSemantics::Literal => "literal",
            DiffEqSemantics::DegreeTracking => "degree-tracking",
        }
    }

    pub fn from_label(s: &str) -> Option<DiffEqSemantics> {
        DiffEqSemantics::ALL.into_iter().find(|k| k.label() == s)
    }
}

/// Factor application order `[first, .., last]`, a permutation of `1..=r`.
pub fn ascending_order(r: usize) -> Vec<usize> {
    (1..=r).collect()
}

/// The reverse application order.
pub fn descending_order(r: usize) -> Vec<usize> {
    (1..=r).rev().collect()
}

fn validate_order(order: &[usize], r: usize) -> Result<(), CoreError> {
    let mut seen = vec![false; r];
    if order.len() != r {
        return Err(CoreError::Invalid(format!(
            "factor order {order:?} must list each direction 1..={r} exactly once"
        )));
    }
    for &j in order {
        if !(1..=r).contains(&j) || seen[j - 1] {
            return Err(CoreError::Invalid(format!(
                "factor order {order:?} must list each direction 1..={r} exactly once"
            )));
        }
        seen[j - 1] = true;
    }
    Ok(())
}

fn order_label(order: &[usize]) -> String {
    order
        .iter()
        .map(|j| j.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// One factor of the `x`-equation applied to `f`:
/// `c_j (x + arg) f(x) - x f(x - 1)`, where `arg` depends on the semantics.
fn x_factor(
    f: &PolyX,
    cj: &Rational,
    beta: &Rational,
    n_total: u32,
    semantics: DiffEqSemantics,
) -> PolyX {
    if f.is_zero() {
        return PolyX::zero();
    }
    let arg = match semantics {
        DiffEqSemantics::Literal => beta.clone(),
        DiffEqSemantics::DegreeTracking => {
            let deg = f.degree().expect("nonzero polynomial") as i64;
            beta + &Rational::from(i64::from(n_total) - 1 - deg)
        }
    };
    let coeff = PolyX::from_coeffs(vec![cj * &arg, cj.clone()]);
    &(&coeff * f) - &(&PolyX::x() * &f.shift(&-Rational::one()))
}

/// Order-`(r + 1)` difference equation in `x`:
/// the factors applied to `(T_x - I) M_n` equal
/// `sum_k (c_k - 1) n_k` times the factors (omitting `k`) applied to `M_n`.
pub fn check_diffeq_x(
    table: &MeixnerTable,
    n: &MultiIndex,
    semantics: DiffEqSemantics,
    order: &[usize],
) -> Result<RelationReport, CoreError> {
    let p = table.params();
    if n.len() != p.r() {
        return Err(CoreError::IndexLengthMismatch {
            expected: p.r(),
            found: n.len(),
        });
    }
    validate_order(order, p.r())?;
    let m = table.poly(n);
    let beta = p.beta();
    let total = n.total();

    let mut lhs = &m.shift(&Rational::one()) - &*m;
    for &j in order {
        lhs = x_factor(&lhs, p.c(j), beta, total, semantics);
    }

    let mut rhs = PolyX::zero();
    for k in 1..=p.r() {
        let nk = n.get(k);
        if nk == 0 {
            continue;
        }
        let mut term = m.as_ref().clone();
        for &j in order {
            if j != k {
                term = x_factor(&term, p.c(j), beta, total, semantics);
            }
        }
        let weight = (p.c(k) - &Rational::one()) * Rational::from(nk);
        rhs = &rhs + &term.scale(&weight);
    }

    Ok(RelationReport::compare(
        "diffeq-x",
        format!(
            "{} n={} semantics={} order=[{}]",
            p.tag(),
            n,
            semantics.label(),
            order_label(order)
        ),
        &lhs,
        &rhs,
    ))
}

/// Tables at `beta, beta + 1, .., beta + depth`, shared across the checks of
/// the `beta`-difference equation.
pub struct BetaLadder {
    tables: Vec<MeixnerTable>,
}

impl BetaLadder {
    pub fn new(params: &Params, depth: usize) -> BetaLadder {
        let tables = (0..=depth as i64)
            .map(|s| {
                MeixnerTable::new(
                    params
                        .with_beta_shift(s)
                        .expect("upward beta shifts stay positive"),
                )
            })
            .collect();
        BetaLadder { tables }
    }

    pub fn params(&self) -> &Params {
        self.tables[0].params()
    }

    pub fn depth(&self) -> usize {
        self.tables.len() - 1
    }

    /// The values `M_n` at `beta + s` for `s = 0..=depth`.
    fn family(&self, n: &MultiIndex) -> Vec<PolyX> {
        self.tables.iter().map(|t| t.poly(n).as_ref().clone()).collect()
    }
}

/// One factor of the `beta`-equation applied to a family `g` (indexed by the
/// level offset `s`, so the running level is `beta + s`):
/// `(c_j - 1)(x + beta' + 1) g(beta' + 1) + (beta' + add) g(beta')`,
/// where `add` depends on the semantics. The output family is one level
/// shorter.
fn beta_factor(
    g: &[PolyX],
    cj: &Rational,
    beta: &Rational,
    n_total: u32,
    semantics: DiffEqSemantics,
) -> Vec<PolyX> {
    let shift_weight = cj - &Rational::one();
    (0..g.len() - 1)
        .map(|s| {
            let level = beta + &Rational::from(s);
            let x_plus = PolyX::from_coeffs(vec![&level + &Rational::one(), Rational::one()]);
            let shifted = (&x_plus * &g[s + 1]).scale(&shift_weight);
            if g[s].is_zero() {
                return shifted;
            }
            let add = match semantics {
                DiffEqSemantics::Literal => Rational::from(n_total),
                DiffEqSemantics::DegreeTracking => {
                    Rational::from(g[s].degree().expect("nonzero polynomial") as i64 + 1)
                }
            };
            &shifted + &g[s].scale(&(&level + &add))
        })
        .collect()
}

/// Order-`(r + 1)` difference equation in `beta`:
/// the factors applied to `(T_beta - I) M_n` at base level `beta` equal
/// `sum_k c_k n_k` times the factors (omitting `k`) applied to the family
/// `beta' -> M_n` at levels `beta' + 1`.
pub fn check_diffeq_beta(
    ladder: &BetaLadder,
    n: &MultiIndex,
    semantics: DiffEqSemantics,
    order: &[usize],
) -> Result<RelationReport, CoreError> {
    let p = ladder.params();
    let r = p.r();
    if n.len() != r {
        return Err(CoreError::IndexLengthMismatch {
            expected: r,
            found: n.len(),
        });
    }
    validate_order(order, r)?;
    if ladder.depth() < r + 1 {
        return Err(CoreError::Invalid(format!(
            "beta ladder depth {} is too shallow for r = {r} (need {})",
            ladder.depth(),
            r + 1
        )));
    }
    let beta = p.beta();
    let total = n.total();
    let g = ladder.family(n);

    let mut lhs_family: Vec<PolyX> =
        (0..g.len() - 1).map(|s| &g[s + 1] - &g[s]).collect();
    for &j in order {
        lhs_family = beta_factor(&lhs_family, p.c(j), beta, total, semantics);
    }
    let lhs = lhs_family[0].clone();

    let mut rhs = PolyX::zero();
    for k in 1..=r {
        let nk = n.get(k);
        if nk == 0 {
            continue;
        }
        let mut term_family = g[1..].to_vec();
        for &j in order {
            if j != k {
                term_family = beta_factor(&term_family, p.c(j), beta, total, semantics);
            }
        }
        let weight = p.c(k) * &Rational::from(nk);
        rhs = &rhs + &term_family[0].scale(&weight);
    }

    Ok(RelationReport::compare(
        "diffeq-beta",
        format!(
            "{} n={} semantics={} order=[{}]",
            p.tag(),
            n,
            semantics.label(),
            order_label(order)
        ),
        &lhs,
        &rhs,
    ))
}

/// Run the `x`-equation exhaustively over `|n| <= max_total`.
pub fn check_diffeq_x_all(
    table: &MeixnerTable,
    semantics: DiffEqSemantics,
    order: &[usize],
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    enumerate_up_to(table.params().r(), max_total)
        .iter()
        .map(|n| check_diffeq_x(table, n, semantics, order))
        .collect()
}

/// Run the `beta`-equation exhaustively over `|n| <= max_total`.
pub fn check_diffeq_beta_all(
    params: &Params,
    semantics: DiffEqSemantics,
    order: &[usize],
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let ladder = BetaLadder::new(params, params.r() + 1);
    enumerate_up_to(params.r(), max_total)
        .iter()
        .map(|n| check_diffeq_beta(&ladder, n, semantics, order))
        .collect()
}

/// Record the outcome of every semantics/ordering combination for both
/// equations. Reports are returned as observed; failures of the literal
/// reading at mixed indices are expected and are part of the record.
pub fn diffeq_outcome_record(
    params: &Params,
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let table = MeixnerTable::new(params.clone());
    let ladder = BetaLadder::new(params, params.r() + 1);
    let orders = [ascending_order(params.r()), descending_order(params.r())];
    let mut out = Vec::new();
    for semantics in DiffEqSemantics::ALL {
        for order in &orders {
            for n in enumerate_up_to(params.r(), max_total) {
                out.push(check_diffeq_x(&table, &n, semantics, order)?);
                out.push(check_diffeq_beta(&ladder, &n, semantics, order)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rank1() -> Params {
        Params::new(q("1"), vec![q("1/2")]).unwrap()
    }

    fn rank2_unit_beta() -> Params {
        Params::new(q("1"), vec![q("1/3"), q("1/2")]).unwrap()
    }

    fn rank2() -> Params {
        Params::new(q("3/2"), vec![q("1/3"), q("1/2")]).unwrap()
    }

    #[test]
    fn rank_one_passes_under_both_semantics() {
        let p = rank1();
        let table = MeixnerTable::new(p.clone());
        let ladder = BetaLadder::new(&p, 2);
        for semantics in DiffEqSemantics::ALL {
            for total in 0..=5u32 {
                let n = MultiIndex::new(vec![total]);
                let rx = check_diffeq_x(&table, &n, semantics, &[1]).unwrap();
                assert!(rx.pass, "{}", rx.summary_line());
                let rb = check_diffeq_beta(&ladder, &n, semantics, &[1]).unwrap();
                assert!(rb.pass, "{}", rb.summary_line());
            }
        }
    }

    #[test]
    fn degree_tracking_matches_hand_computation() {
        // r = 2, beta = 1, c = (1/3, 1/2), n = (1, 1):
        // both sides of the x-equation reduce to 2/3 x^3 - 5 x^2 + 13/2 x,
        // and both sides of the beta-equation to -1/2 x^3 + 35/6 x^2
        // - 43/3 x + 4.
        let p = rank2_unit_beta();
        let table = MeixnerTable::new(p.clone());
        let n = MultiIndex::new(vec![1, 1]);
        let rx = check_diffeq_x(&table, &n, DiffEqSemantics::DegreeTracking, &[1, 2]).unwrap();
        assert!(rx.pass);
        let expected_x = PolyX::from_coeffs(vec![q("0"), q("13/2"), q("-5"), q("2/3")]);
        assert_eq!(rx.lhs, expected_x.to_string());

        let ladder = BetaLadder::new(&p, 3);
        let rb =
            check_diffeq_beta(&ladder, &n, DiffEqSemantics::DegreeTracking, &[1, 2]).unwrap();
        assert!(rb.pass);
        let expected_b = PolyX::from_coeffs(vec![q("4"), q("-43/3"), q("35/6"), q("-1/2")]);
        assert_eq!(rb.lhs, expected_b.to_string());
    }

    #[test]
    fn degree_tracking_holds_exhaustively_in_any_order() {
        let p = rank2();
        let table = MeixnerTable::new(p.clone());
        for order in [vec![1, 2], vec![2, 1]] {
            for rep in
                check_diffeq_x_all(&table, DiffEqSemantics::DegreeTracking, &order, 4).unwrap()
            {
                assert!(rep.pass, "{}", rep.summary_line());
            }
            for rep in
                check_diffeq_beta_all(&p, DiffEqSemantics::DegreeTracking, &order, 4).unwrap()
            {
                assert!(rep.pass, "{}", rep.summary_line());
            }
        }
        let p3 = Params::new(q("2"), vec![q("1/5"), q("1/3"), q("1/2")]).unwrap();
        let t3 = MeixnerTable::new(p3.clone());
        for rep in
            check_diffeq_x_all(&t3, DiffEqSemantics::DegreeTracking, &[1, 2, 3], 3).unwrap()
        {
            assert!(rep.pass, "{}", rep.summary_line());
        }
        for rep in
            check_diffeq_beta_all(&p3, DiffEqSemantics::DegreeTracking, &[3, 1, 2], 3).unwrap()
        {
            assert!(rep.pass, "{}", rep.summary_line());
        }
    }

    #[test]
    fn literal_reading_needs_the_matching_factor_first() {
        // At n = (1, 0) the literal reading holds when the direction-1
        // factor is applied first and fails otherwise; at the mixed index
        // (1, 1) it fails in every order.
        let p = rank2_unit_beta();
        let table = MeixnerTable::new(p.clone());
        let ladder = BetaLadder::new(&p, 3);
        let pure = MultiIndex::new(vec![1, 0]);
        let mixed = MultiIndex::new(vec![1, 1]);

        let rx = check_diffeq_x(&table, &pure, DiffEqSemantics::Literal, &[1, 2]).unwrap();
        assert!(rx.pass, "{}", rx.summary_line());
        let rx = check_diffeq_x(&table, &pure, DiffEqSemantics::Literal, &[2, 1]).unwrap();
        assert!(!rx.pass);

        let rb = check_diffeq_beta(&ladder, &pure, DiffEqSemantics::Literal, &[1, 2]).unwrap();
        assert!(rb.pass, "{}", rb.summary_line());
        let rb = check_diffeq_beta(&ladder, &pure, DiffEqSemantics::Literal, &[2, 1]).unwrap();
        assert!(!rb.pass);

        for order in [vec![1, 2], vec![2, 1]] {
            let rx = check_diffeq_x(&table, &mixed, DiffEqSemantics::Literal, &order).unwrap();
            assert!(!rx.pass, "{}", rx.summary_line());
            let rb = check_diffeq_beta(&ladder, &mixed, DiffEqSemantics::Literal, &order).unwrap();
            assert!(!rb.pass, "{}", rb.summary_line());
        }
    }

    #[test]
    fn factor_order_must_be_a_permutation() {
        let table = MeixnerTable::new(rank2());
        let n = MultiIndex::new(vec![1, 0]);
        for bad in [vec![1], vec![1, 1], vec![1, 3], vec![1, 2, 2]] {
            assert!(
                check_diffeq_x(&table, &n, DiffEqSemantics::DegreeTracking, &bad).is_err(),
                "{bad:?}"
            );
        }
    }
}
