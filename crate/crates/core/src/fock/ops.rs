//! Constructors for the oscillator-model operators as exact truncated
//! matrices.
//!
//! Every named operator is built in a single pass from its exact
//! normal-ordered action on monomials, never as a product of previously
//! truncated factors. This matters at the degree boundary: a product of
//! truncated matrices loses contributions that pass through dropped
//! monomials, while the single-pass build only ever loses terms that
//! genuinely leave the retained space.

use std::str::FromStr;
use std::sync::Arc;

use crate::error::CoreError;
use crate::fock::basis::FockBasis;
use crate::fock::matrix::FockMatrix;
use crate::params::Params;
use crate::rational::Rational;

fn rat(k: i64) -> Rational {
    Rational::new(k, 1)
}

fn check_direction(i: usize, r: usize) -> Result<(), CoreError> {
    if i == 0 || i > r {
        return Err(CoreError::DirectionOutOfRange { i, r });
    }
    Ok(())
}

fn check_rank(basis: &FockBasis, params: &Params) -> Result<(), CoreError> {
    if basis.modes() != params.r() {
        return Err(CoreError::IndexLengthMismatch {
            expected: basis.modes(),
            found: params.r(),
        });
    }
    Ok(())
}

fn require_rank_one(relation: &str, modes: usize) -> Result<(), CoreError> {
    if modes != 1 {
        return Err(CoreError::RankOneOnly {
            relation: relation.to_string(),
            r: modes,
        });
    }
    Ok(())
}

/// `1/(1 - c_i)`.
fn inv_gap(params: &Params, i: usize) -> Rational {
    (Rational::one() - params.c(i).clone()).recip()
}

/// Annihilation operator `a_i`: `z^n -> n_i z^(n - e_i)`.
pub fn lowering(basis: &Arc<FockBasis>, i: usize) -> Result<FockMatrix, CoreError> {
    check_direction(i, basis.modes())?;
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        match n.dec(i) {
            Some(m) => vec![(m, rat(n.get(i) as i64))],
            None => vec![],
        }
    }))
}

/// Creation operator `a_i^+`: `z^n -> z^(n + e_i)` (dropped past the cut).
pub fn raising(basis: &Arc<FockBasis>, i: usize) -> Result<FockMatrix, CoreError> {
    check_direction(i, basis.modes())?;
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        vec![(n.inc(i), Rational::one())]
    }))
}

/// Mode occupation `a_i^+ a_i`, built directly as the diagonal `n_i`.
pub fn number(basis: &Arc<FockBasis>, i: usize) -> Result<FockMatrix, CoreError> {
    check_direction(i, basis.modes())?;
    Ok(FockMatrix::diagonal(Arc::clone(basis), move |n| {
        rat(n.get(i) as i64)
    }))
}

/// Total occupation `H_0 = sum_k a_k^+ a_k`, the diagonal `|n|`.
pub fn total_number(basis: &Arc<FockBasis>) -> FockMatrix {
    FockMatrix::diagonal(Arc::clone(basis), |n| rat(n.total() as i64))
}

/// The `i`-th oscillator Hamiltonian, whose transpose realizes the
/// nearest-neighbor recurrence of the polynomial family:
///
/// `H_i z^n = n_i z^(n-e_i)
///          + [sum_k n_k/(1-c_k) + c_i/(1-c_i)(beta+|n|)] z^n
///          + (beta+|n|) sum_j c_j/(1-c_j)^2 z^(n+e_j)`.
pub fn hamiltonian(
    basis: &Arc<FockBasis>,
    params: &Params,
    i: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(i, params.r())?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let depth = rat(n.total() as i64) + p.beta().clone();
        let mut terms = Vec::new();
        if let Some(m) = n.dec(i) {
            terms.push((m, rat(n.get(i) as i64)));
        }
        let mut diag = p.c(i).clone() * inv_gap(&p, i) * depth.clone();
        for k in 1..=p.r() {
            diag = diag + rat(n.get(k) as i64) * inv_gap(&p, k);
        }
        terms.push((n.clone(), diag));
        for j in 1..=p.r() {
            let w = p.c(j).clone() * inv_gap(&p, j).pow(2) * depth.clone();
            terms.push((n.inc(j), w));
        }
        terms
    }))
}

/// The non-symmetric partner `Hbar_i = exp(L_i) (H_0 + R_i) exp(-L_i)`,
/// built directly from its expanded normal-ordered action (its transpose
/// realizes the recurrence that keeps `x M_n` inside the up-shifted family):
///
/// `Hbar_i z^n = n_i z^(n-e_i)
///            + [c_i beta/(1-c_i) + |n|/(1-c_i) + c_i n_i/(1-c_i)] z^n
///            + n_i sum_{k != i} c_k/(1-c_k) z^(n-e_i+e_k)
///            + (beta+|n|) sum_k c_k/((1-c_i)(1-c_k)) z^(n+e_k)`.
pub fn hamiltonian_bar(
    basis: &Arc<FockBasis>,
    params: &Params,
    i: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(i, params.r())?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let depth = rat(n.total() as i64) + p.beta().clone();
        let gi = inv_gap(&p, i);
        let ni = rat(n.get(i) as i64);
        let mut terms = Vec::new();
        if let Some(m) = n.dec(i) {
            terms.push((m, ni.clone()));
        }
        let diag = gi.clone()
            * (p.c(i).clone() * p.beta().clone()
                + rat(n.total() as i64)
                + p.c(i).clone() * ni.clone());
        terms.push((n.clone(), diag));
        if let Some(m) = n.dec(i) {
            for k in 1..=p.r() {
                if k == i {
                    continue;
                }
                let w = ni.clone() * p.c(k).clone() * inv_gap(&p, k);
                terms.push((m.inc(k), w));
            }
        }
        for k in 1..=p.r() {
            let w = depth.clone() * p.c(k).clone() * gi.clone() * inv_gap(&p, k);
            terms.push((n.inc(k), w));
        }
        terms
    }))
}

/// Ladder operator `X_i = a_i + c_i/(1-c_i)(beta + H_0)`; sends the
/// eigenvector at `(x, beta)` to `x` times the one at `(x-1, beta+1)`.
pub fn ladder_x(
    basis: &Arc<FockBasis>,
    params: &Params,
    i: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(i, params.r())?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let depth = rat(n.total() as i64) + p.beta().clone();
        let mut terms = Vec::new();
        if let Some(m) = n.dec(i) {
            terms.push((m, rat(n.get(i) as i64)));
        }
        terms.push((n.clone(), p.c(i).clone() * inv_gap(&p, i) * depth));
        terms
    }))
}

/// Ladder operator `Y = 1 + sum_k a_k^+/(1-c_k)`; sends the eigenvector at
/// `(x, beta)` to the one at `(x+1, beta-1)`.
pub fn ladder_y(basis: &Arc<FockBasis>, params: &Params) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let mut terms = vec![(n.clone(), Rational::one())];
        for k in 1..=p.r() {
            terms.push((n.inc(k), inv_gap(&p, k)));
        }
        terms
    }))
}

/// Intertwiner `Xhat_i = a_i + (beta + H_0)/(1-c_i)`; maps the eigenvector
/// at `(x, beta)` to `(x+beta)` times the one at `(x, beta+1)`, preserving
/// the eigenvalue.
pub fn intertwiner_xhat(
    basis: &Arc<FockBasis>,
    params: &Params,
    i: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(i, params.r())?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let depth = rat(n.total() as i64) + p.beta().clone();
        let mut terms = Vec::new();
        if let Some(m) = n.dec(i) {
            terms.push((m, rat(n.get(i) as i64)));
        }
        terms.push((n.clone(), inv_gap(&p, i) * depth));
        terms
    }))
}

/// Intertwiner `Yhat = 1 + sum_k c_k/(1-c_k) a_k^+`; maps the eigenvector
/// at `(x, beta)` to the one at `(x, beta-1)`.
pub fn intertwiner_yhat(
    basis: &Arc<FockBasis>,
    params: &Params,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let mut terms = vec![(n.clone(), Rational::one())];
        for k in 1..=p.r() {
            terms.push((n.inc(k), p.c(k).clone() * inv_gap(&p, k)));
        }
        terms
    }))
}

/// Nilpotent conjugation generator `L_i = (1-c_i) a_i`.
pub fn conjugation_generator(
    basis: &Arc<FockBasis>,
    params: &Params,
    i: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(i, params.r())?;
    let gap = Rational::one() - params.c(i).clone();
    Ok(lowering(basis, i)?.scale(&gap))
}

/// Raising correction `R_i = sum_k c_k/((1-c_i)(1-c_k)) a_k^+(beta + H_0)`,
/// the degree-raising part left over when `Hbar_i` is pulled back to `H_0`
/// by `exp(L_i)`.
pub fn raising_correction(
    basis: &Arc<FockBasis>,
    params: &Params,
    i: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(i, params.r())?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let depth = rat(n.total() as i64) + p.beta().clone();
        let gi = inv_gap(&p, i);
        (1..=p.r())
            .map(|k| {
                let w = depth.clone() * p.c(k).clone() * gi.clone() * inv_gap(&p, k);
                (n.inc(k), w)
            })
            .collect()
    }))
}

/// The pairwise-difference operator
/// `P_ij = a_i - a_j + (c_i-c_j)/((1-c_i)(1-c_j)) (beta + H_0)`.
///
/// This is the operator form of the pairwise step between neighbouring
/// indices: it annihilates every candidate eigenvector, so any multiple of
/// it vanishes on the common eigenvectors without vanishing as a matrix.
/// It is exactly the factor through which `[H_i, H_j]` and the
/// mixed-direction ladder defects factorize.
pub fn pairwise_defect(
    basis: &Arc<FockBasis>,
    params: &Params,
    i: usize,
    j: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(i, params.r())?;
    check_direction(j, params.r())?;
    if i == j {
        return Err(CoreError::EqualDirections { i });
    }
    let beta = params.beta().clone();
    let kappa =
        (params.c(i).clone() - params.c(j).clone()) * inv_gap(params, i) * inv_gap(params, j);
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        let mut terms = Vec::new();
        if let Some(m) = n.dec(i) {
            terms.push((m, rat(n.get(i) as i64)));
        }
        if let Some(m) = n.dec(j) {
            terms.push((m, -rat(n.get(j) as i64)));
        }
        let depth = rat(n.total() as i64) + beta.clone();
        terms.push((n.clone(), kappa.clone() * depth));
        terms
    }))
}

/// The raising form `T = sum_k c_k/(1-c_k)^2 a_k^+`, the degree-raising
/// part shared by every Hamiltonian; `lambda + T` is the prefactor in the
/// factored commutator `[H_i, H_j] = (lambda_ij + T) P_ij`.
pub fn raising_sum(basis: &Arc<FockBasis>, params: &Params) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    let p = params.clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        (1..=p.r())
            .map(|k| {
                let t = p.c(k).clone() * inv_gap(&p, k).pow(2);
                (n.inc(k), t)
            })
            .collect()
    }))
}

/// One summand `a_k^+(beta + H_0)` of the raising correction:
/// `z^n -> (beta+|n|) z^(n+e_k)`. The summands commute pairwise.
pub fn weighted_raising(
    basis: &Arc<FockBasis>,
    params: &Params,
    k: usize,
) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    check_direction(k, params.r())?;
    let beta = params.beta().clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        vec![(n.inc(k), rat(n.total() as i64) + beta.clone())]
    }))
}

/// su(1,1) weight operator `J_0 = a^+a + beta/2` (single mode only).
pub fn su_j0(basis: &Arc<FockBasis>, params: &Params) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    require_rank_one("su11", basis.modes())?;
    let half_beta = params.beta().clone() * Rational::new(1, 2);
    Ok(FockMatrix::diagonal(Arc::clone(basis), move |n| {
        rat(n.total() as i64) + half_beta.clone()
    }))
}

/// su(1,1) raising element `J_+ = a^+(beta + a^+a)`:
/// `z^n -> (beta+n) z^(n+1)` (single mode only).
pub fn su_jplus(basis: &Arc<FockBasis>, params: &Params) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    require_rank_one("su11", basis.modes())?;
    let beta = params.beta().clone();
    Ok(FockMatrix::from_action(Arc::clone(basis), move |n| {
        vec![(n.inc(1), rat(n.total() as i64) + beta.clone())]
    }))
}

/// su(1,1) lowering element `J_- = a` (single mode only).
pub fn su_jminus(basis: &Arc<FockBasis>, params: &Params) -> Result<FockMatrix, CoreError> {
    check_rank(basis, params)?;
    require_rank_one("su11", basis.modes())?;
    lowering(basis, 1)
}

/// Metaplectic weight `J_0 = (a a^+ + a^+ a)/4`, normal-ordered to the
/// diagonal `(2n+1)/4` (single mode only).
pub fn meta_j0(basis: &Arc<FockBasis>) -> Result<FockMatrix, CoreError> {
    require_rank_one("su11", basis.modes())?;
    Ok(FockMatrix::diagonal(Arc::clone(basis), |n| {
        Rational::new(2 * n.total() as i64 + 1, 4)
    }))
}

/// Metaplectic raising element `J_+ = (a^+)^2/2` (single mode only).
pub fn meta_jplus(basis: &Arc<FockBasis>) -> Result<FockMatrix, CoreError> {
    require_rank_one("su11", basis.modes())?;
    Ok(FockMatrix::from_action(Arc::clone(basis), |n| {
        vec![(n.inc(1).inc(1), Rational::new(1, 2))]
    }))
}

/// Metaplectic lowering element `J_- = a^2/2`:
/// `z^n -> n(n-1)/2 z^(n-2)` (single mode only).
pub fn meta_jminus(basis: &Arc<FockBasis>) -> Result<FockMatrix, CoreError> {
    require_rank_one("su11", basis.modes())?;
    Ok(FockMatrix::from_action(Arc::clone(basis), |n| {
        match n.dec(1).and_then(|m| m.dec(1)) {
            Some(m) => {
                let k = n.total() as i64;
                vec![(m, Rational::new(k * (k - 1), 2))]
            }
            None => vec![],
        }
    }))
}

/// Named operator selector used by the command-line dump.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpName {
    Lowering(usize),
    Raising(usize),
    Number(usize),
    TotalNumber,
    Hamiltonian(usize),
    HamiltonianBar(usize),
    LadderX(usize),
    LadderY,
    IntertwinerXhat(usize),
    IntertwinerYhat,
    ConjugationGenerator(usize),
    RaisingCorrection(usize),
    SuJ0,
    SuJPlus,
    SuJMinus,
    MetaJ0,
    MetaJPlus,
    MetaJMinus,
}

impl OpName {
    /// Canonical label, the inverse of [`OpName::from_str`].
    pub fn label(&self) -> String {
        match self {
            OpName::Lowering(i) => format!("a{i}"),
            OpName::Raising(i) => format!("adag{i}"),
            OpName::Number(i) => format!("n{i}"),
            OpName::TotalNumber => "h0".into(),
            OpName::Hamiltonian(i) => format!("h{i}"),
            OpName::HamiltonianBar(i) => format!("hbar{i}"),
            OpName::LadderX(i) => format!("x{i}"),
            OpName::LadderY => "y".into(),
            OpName::IntertwinerXhat(i) => format!("xhat{i}"),
            OpName::IntertwinerYhat => "yhat".into(),
            OpName::ConjugationGenerator(i) => format!("l{i}"),
            OpName::RaisingCorrection(i) => format!("r{i}"),
            OpName::SuJ0 => "j0".into(),
            OpName::SuJPlus => "jplus".into(),
            OpName::SuJMinus => "jminus".into(),
            OpName::MetaJ0 => "mj0".into(),
            OpName::MetaJPlus => "mjplus".into(),
            OpName::MetaJMinus => "mjminus".into(),
        }
    }

    /// Build the named operator over `basis` with weights `params`.
    pub fn matrix(
        &self,
        basis: &Arc<FockBasis>,
        params: &Params,
    ) -> Result<FockMatrix, CoreError> {
        match self {
            OpName::Lowering(i) => lowering(basis, *i),
            OpName::Raising(i) => raising(basis, *i),
            OpName::Number(i) => number(basis, *i),
            OpName::TotalNumber => Ok(total_number(basis)),
            OpName::Hamiltonian(i) => hamiltonian(basis, params, *i),
            OpName::HamiltonianBar(i) => hamiltonian_bar(basis, params, *i),
            OpName::LadderX(i) => ladder_x(basis, params, *i),
            OpName::LadderY => ladder_y(basis, params),
            OpName::IntertwinerXhat(i) => intertwiner_xhat(basis, params, *i),
            OpName::IntertwinerYhat => intertwiner_yhat(basis, params),
            OpName::ConjugationGenerator(i) => conjugation_generator(basis, params, *i),
            OpName::RaisingCorrection(i) => raising_correction(basis, params, *i),
            OpName::SuJ0 => su_j0(basis, params),
            OpName::SuJPlus => su_jplus(basis, params),
            OpName::SuJMinus => su_jminus(basis, params),
            OpName::MetaJ0 => meta_j0(basis),
            OpName::MetaJPlus => meta_jplus(basis),
            OpName::MetaJMinus => meta_jminus(basis),
        }
    }
}

impl FromStr for OpName {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        fn indexed(s: &str, prefix: &str) -> Option<usize> {
            s.strip_prefix(prefix)?.parse().ok()
        }
        let fixed = match s {
            "h0" => Some(OpName::TotalNumber),
            "y" => Some(OpName::LadderY),
            "yhat" => Some(OpName::IntertwinerYhat),
            "j0" => Some(OpName::SuJ0),
            "jplus" => Some(OpName::SuJPlus),
            "jminus" => Some(OpName::SuJMinus),
            "mj0" => Some(OpName::MetaJ0),
            "mjplus" => Some(OpName::MetaJPlus),
            "mjminus" => Some(OpName::MetaJMinus),
            _ => None,
        };
        if let Some(op) = fixed {
            return Ok(op);
        }
        // Longer prefixes first so e.g. "adag2" is not read as "a" + "dag2".
        let prefixed = [
            ("adag", OpName::Raising as fn(usize) -> OpName),
            ("hbar", OpName::HamiltonianBar),
            ("xhat", OpName::IntertwinerXhat),
            ("a", OpName::Lowering),
            ("n", OpName::Number),
            ("h", OpName::Hamiltonian),
            ("x", OpName::LadderX),
            ("l", OpName::ConjugationGenerator),
            ("r", OpName::RaisingCorrection),
        ];
        for (prefix, make) in prefixed {
            if let Some(i) = indexed(s, prefix) {
                return Ok(make(i));
            }
        }
        Err(CoreError::Invalid(format!("unknown operator name '{s}'")))
    }
}
