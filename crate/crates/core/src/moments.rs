//! Moments of the discrete weights `w_i(x) = (beta)_x c_i^x / x!` on
//! `x = 0, 1, 2, ..` and the orthogonality checks built on them.
//!
//! Applying the Euler operator `theta = c d/dc` to the closed form
//! `sum_x (beta)_x c^x / x! = (1-c)^(-beta)` shows that the `j`-th moment is
//! `(1-c)^(-beta) G_j(c)` with rational functions `G_0 = 1`,
//! `G_{j+1} = c G_j' + beta c/(1-c) G_j`. The common prefactor never
//! vanishes, so vanishing of a moment functional is decided exactly by the
//! `G`-values alone — no irrational arithmetic enters.
//!
//! A second, independent route sums the series directly: an exact partial
//! sum together with a rational bound on the dropped tail certifies whether
//! the full sum can be zero. The two routes must agree.

use crate::error::CoreError;
use crate::index::{enumerate_up_to, MultiIndex};
use crate::meixner::MeixnerTable;
use crate::params::Params;
use crate::poly::PolyX;
use crate::ratfunc::RatFuncC;
use crate::rational::Rational;
use crate::report::RelationReport;

/// The rational functions `G_0, .., G_depth` for one value of `beta`.
pub struct MomentKernel {
    beta: Rational,
    gs: Vec<RatFuncC>,
}

impl MomentKernel {
    pub fn new(beta: &Rational, depth: usize) -> MomentKernel {
        let drift = RatFuncC::new(
            PolyX::from_coeffs(vec![Rational::zero(), beta.clone()]),
            PolyX::from_coeffs(vec![Rational::one(), -&Rational::one()]),
        );
        let c_poly = RatFuncC::from_poly(PolyX::x());
        let mut gs = vec![RatFuncC::one()];
        for j in 0..depth {
            let g = &gs[j];
            gs.push(&(&c_poly * &g.derivative()) + &(&drift * g));
        }
        MomentKernel { beta: beta.clone(), gs }
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn depth(&self) -> usize {
        self.gs.len() - 1
    }

    pub fn g(&self, j: usize) -> &RatFuncC {
        &self.gs[j]
    }

    /// `G_j(c)`, i.e. the `j`-th moment divided by the zeroth moment.
    pub fn moment_ratio(&self, c: &Rational, j: usize) -> Rational {
        self.gs[j]
            .eval(c)
            .expect("moment kernel has poles only at c = 1")
    }

    /// The moment functional applied to a polynomial, up to the positive
    /// prefactor `(1-c)^(-beta)`: `sum_d a_d G_d(c)`.
    pub fn functional(&self, c: &Rational, f: &PolyX) -> Rational {
        f.coeffs()
            .iter()
            .enumerate()
            .map(|(d, a)| a * &self.moment_ratio(c, d))
            .sum()
    }
}

/// Orthogonality of `M_n` against the `i`-th weight: the functional kills
/// `M_n x^j` for every `j < n_i` and must not kill `M_n x^{n_i}`.
pub fn check_orthogonality(
    table: &MeixnerTable,
    kernel: &MomentKernel,
    n: &MultiIndex,
    i: usize,
) -> Result<Vec<RelationReport>, CoreError> {
    let p = table.params();
    if n.len() != p.r() {
        return Err(CoreError::IndexLengthMismatch {
            expected: p.r(),
            found: n.len(),
        });
    }
    if !(1..=p.r()).contains(&i) {
        return Err(CoreError::DirectionOutOfRange { i, r: p.r() });
    }
    let ni = n.get(i) as usize;
    let needed = n.total() as usize + ni;
    if kernel.depth() < needed {
        return Err(CoreError::Invalid(format!(
            "moment kernel depth {} is too shallow, need {}",
            kernel.depth(),
            needed
        )));
    }
    let m = table.poly(n);
    let ci = p.c(i);
    let mut out = Vec::new();
    for j in 0..=ni {
        let value = kernel.functional(ci, &m.mul_xk(j));
        let instance = format!("{} n={} i={} j={}", p.tag(), n, i, j);
        if j < ni {
            out.push(RelationReport::compare(
                "orthogonality",
                instance,
                &value,
                &Rational::zero(),
            ));
        } else {
            out.push(RelationReport::new(
                "orthogonality",
                instance,
                !value.is_zero(),
                value.to_string(),
                "nonzero".to_string(),
            ));
        }
    }
    Ok(out)
}

/// Orthogonality for every `|n| <= max_total` and every direction.
pub fn check_orthogonality_all(
    table: &MeixnerTable,
    max_total: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let p = table.params();
    let kernel = MomentKernel::new(p.beta(), 2 * max_total as usize);
    let mut out = Vec::new();
    for n in enumerate_up_to(p.r(), max_total) {
        for i in 1..=p.r() {
            out.extend(check_orthogonality(table, &kernel, &n, i)?);
        }
    }
    Ok(out)
}

/// Result of summing `sum_x w_i(x) f(x)` over `x = 0..=x_max` exactly,
/// with a rational bound on the dropped tail.
#[derive(Clone, Debug)]
pub struct TruncatedSum {
    pub partial: Rational,
    pub tail_bound: Rational,
}

impl TruncatedSum {
    /// Whether the partial sum is consistent with the full series being
    /// zero: the dropped tail could account for all of it.
    pub fn consistent_with_zero(&self) -> bool {
        self.partial.abs() <= self.tail_bound
    }

    /// Whether the partial sum proves the full series nonzero.
    pub fn provably_nonzero(&self) -> bool {
        self.partial.abs() > self.tail_bound
    }
}

/// Cauchy bound: every root of `f` lies strictly inside `|z| < R`.
fn cauchy_root_bound(f: &PolyX) -> Rational {
    let one = Rational::one();
    match f.degree() {
        None | Some(0) => one,
        Some(d) => {
            let lead = f.coeff(d);
            let mut worst = Rational::zero();
            for k in 0..d {
                let ratio = (f.coeff(k) / &lead).abs();
                if ratio > worst {
                    worst = ratio;
                }
            }
            let bound = &one + &worst;
            if bound > one {
                bound
            } else {
                one
            }
        }
    }
}

/// Sum `sum_{x=0}^{x_max} (beta)_x c_i^x / x! f(x)` exactly and bound the
/// tail `sum_{x > x_max}`. Fails with [`CoreError::TruncationTooSmall`] when
/// `x_max` is not comfortably past the roots of `f` or when the term-ratio
/// bound does not contract.
pub fn truncated_sum(
    params: &Params,
    i: usize,
    f: &PolyX,
    x_max: u32,
) -> Result<TruncatedSum, CoreError> {
    if !(1..=params.r()).contains(&i) {
        return Err(CoreError::DirectionOutOfRange { i, r: params.r() });
    }
    let c = params.c(i);
    let beta = params.beta();
    let one = Rational::one();

    let radius = cauchy_root_bound(f);
    let x0 = Rational::from(x_max) + &one;
    if x0 < &Rational::from(2u32) * &radius {
        return Err(CoreError::TruncationTooSmall {
            x_max,
            reason: format!("below twice the root bound {radius}"),
        });
    }

    // Term ratio |t_{x+1}/t_x| for x >= x0 is at most
    // c * (1 + 1/(x0 - R))^deg * max(1, (beta + x0)/(x0 + 1)).
    let degree = f.degree().unwrap_or(0) as u32;
    let growth = (&one + &(&one / &(&x0 - &radius))).pow(degree as i32);
    let drift = (beta + &x0) / (&x0 + &one);
    let drift = if drift > one { drift } else { Rational::one() };
    let q = c * &growth * &drift;
    if q >= one {
        return Err(CoreError::TruncationTooSmall {
            x_max,
            reason: format!("term-ratio bound q = {q} is not < 1"),
        });
    }

    let mut weight = Rational::one();
    let mut partial = f.eval(&Rational::zero());
    for x in 0..x_max {
        let xq = Rational::from(x);
        weight = &weight * &(c * &(beta + &xq) / &(&xq + &one));
        partial = &partial + &(&weight * &f.eval(&(&xq + &one)));
    }
    // First dropped term, at x = x_max + 1.
    let first_dropped = {
        let xq = Rational::from(x_max);
        let w = &weight * &(c * &(beta + &xq) / &(&xq + &one));
        (&w * &f.eval(&x0)).abs()
    };
    let tail_bound = &first_dropped / &(&one - &q);
    Ok(TruncatedSum { partial, tail_bound })
}

/// Cross-check the exact moment route against direct truncated summation
/// for `M_n` against weight `i`: below `n_i` the series must be consistent
/// with zero, at `n_i` it must be provably nonzero, and both verdicts must
/// match the kernel functional.
pub fn check_truncated_orthogonality(
    table: &MeixnerTable,
    n: &MultiIndex,
    i: usize,
    x_max: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let p = table.params();
    let kernel = MomentKernel::new(p.beta(), n.total() as usize + n.get(i) as usize);
    let m = table.poly(n);
    let ni = n.get(i) as usize;
    let mut out = Vec::new();
    for j in 0..=ni {
        let f = m.mul_xk(j);
        let sum = truncated_sum(p, i, &f, x_max)?;
        let exact_zero = kernel.functional(p.c(i), &f).is_zero();
        let verdict_matches = if exact_zero {
            sum.consistent_with_zero()
        } else {
            sum.provably_nonzero()
        };
        out.push(RelationReport::new(
            "orthogonality-truncated",
            format!("{} n={} i={} j={} x_max={}", p.tag(), n, i, j, x_max),
            verdict_matches,
            format!("partial={} tail<={}", sum.partial, sum.tail_bound),
            if exact_zero {
                "series is zero".to_string()
            } else {
                "series is nonzero".to_string()
            },
        ));
    }
    Ok(out)
}
