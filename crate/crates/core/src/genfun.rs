//! Generating-function route to the polynomials, independent of the
//! recurrence construction:
//!
//! ```text
//! (1 + sum_k z_k/(1-c_k))^x (1 + sum_k c_k z_k/(1-c_k))^(-x-beta)
//!     = sum_n M_n(x)/n! z^n
//! ```
//!
//! Both binomials are expanded with [`binom_poly`] into truncated power
//! series in `z` whose coefficients are polynomials in `x`; the product is a
//! second, independent source for every `M_n` and is used as the oracle
//! against the recurrence table.

use std::collections::BTreeMap;

use crate::error::CoreError;
use crate::index::{enumerate_up_to, MultiIndex};
use crate::meixner::MeixnerTable;
use crate::params::Params;
use crate::poly::{binom_poly, PolyX};
use crate::rational::Rational;
use crate::report::RelationReport;

/// Power series in `z_1, .., z_r` truncated at a fixed total degree, with
/// polynomial-in-`x` coefficients. Absent keys are zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesZ {
    r: usize,
    order: u32,
    coeffs: BTreeMap<MultiIndex, PolyX>,
}

impl SeriesZ {
    pub fn zero(r: usize, order: u32) -> SeriesZ {
        SeriesZ {
            r,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(r: usize, order: u32) -> SeriesZ {
        let mut s = SeriesZ::zero(r, order);
        s.coeffs.insert(MultiIndex::zeros(r), PolyX::one());
        s
    }

    /// The linear form `sum_k weights[k] z_k`.
    pub fn linear_form(r: usize, order: u32, weights: &[Rational]) -> SeriesZ {
        assert_eq!(weights.len(), r, "one weight per variable");
        let mut s = SeriesZ::zero(r, order);
        if order == 0 {
            return s;
        }
        for (k, w) in weights.iter().enumerate() {
            if !w.is_zero() {
                s.coeffs
                    .insert(MultiIndex::unit(r, k + 1), PolyX::constant(w.clone()));
            }
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, n: &MultiIndex) -> PolyX {
        self.coeffs.get(n).cloned().unwrap_or_else(PolyX::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &PolyX)> {
        self.coeffs.iter()
    }

    fn insert_nonzero(&mut self, n: MultiIndex, p: PolyX) {
        if !p.is_zero() {
            self.coeffs.insert(n, p);
        }
    }

    pub fn add(&self, other: &SeriesZ) -> SeriesZ {
        assert_eq!((self.r, self.order), (other.r, other.order));
        let mut out = self.clone();
        for (n, p) in &other.coeffs {
            let sum = &out.coeff(n) + p;
            if sum.is_zero() {
                out.coeffs.remove(n);
            } else {
                out.coeffs.insert(n.clone(), sum);
            }
        }
        out
    }

    /// Multiply every coefficient by a fixed polynomial in `x`.
    pub fn scale_poly(&self, p: &PolyX) -> SeriesZ {
        let mut out = SeriesZ::zero(self.r, self.order);
        if p.is_zero() {
            return out;
        }
        for (n, q) in &self.coeffs {
            out.insert_nonzero(n.clone(), p * q);
        }
        out
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &SeriesZ) -> SeriesZ {
        assert_eq!((self.r, self.order), (other.r, other.order));
        let mut out = SeriesZ::zero(self.r, self.order);
        for (a, pa) in &self.coeffs {
            for (b, pb) in &other.coeffs {
                if a.total() + b.total() > self.order {
                    continue;
                }
                let key = MultiIndex::new(
                    a.entries()
                        .iter()
                        .zip(b.entries())
                        .map(|(x, y)| x + y)
                        .collect(),
                );
                let sum = &out.coeff(&key) + &(pa * pb);
                if sum.is_zero() {
                    out.coeffs.remove(&key);
                } else {
                    out.coeffs.insert(key, sum);
                }
            }
        }
        out
    }
}

/// `(1 + L)^e` as a truncated series, where `L` is a series with zero
/// constant term and `e` a polynomial exponent: `sum_m binom(e, m) L^m`.
fn binomial_series(exponent: &PolyX, linear: &SeriesZ) -> SeriesZ {
    let (r, order) = (linear.r, linear.order);
    let mut out = SeriesZ::one(r, order);
    let mut power = SeriesZ::one(r, order);
    for m in 1..=order as usize {
        power = power.mul(linear);
        out = out.add(&power.scale_poly(&binom_poly(exponent, m)));
    }
    out
}

/// The full product series
/// `(1 + sum z_k/(1-c_k))^x (1 + sum c_k z_k/(1-c_k))^(-x-beta)`
/// truncated at total degree `order`. Its coefficient at `n` is `M_n(x)/n!`.
pub fn genfun_series(params: &Params, order: u32) -> SeriesZ {
    let r = params.r();
    let one = Rational::one();
    let rising: Vec<Rational> = (1..=r).map(|k| &one / &(&one - params.c(k))).collect();
    let falling: Vec<Rational> = (1..=r)
        .map(|k| params.c(k) / &(&one - params.c(k)))
        .collect();
    let first = binomial_series(&PolyX::x(), &SeriesZ::linear_form(r, order, &rising));
    let second_exp = PolyX::from_coeffs(vec![-params.beta(), -&Rational::one()]);
    let second = binomial_series(&second_exp, &SeriesZ::linear_form(r, order, &falling));
    first.mul(&second)
}

/// Oracle values `M_n(x) = n! * [z^n]` of the product series, for all
/// `|n| <= order`.
pub fn genfun_table(params: &Params, order: u32) -> BTreeMap<MultiIndex, PolyX> {
    let series = genfun_series(params, order);
    enumerate_up_to(params.r(), order)
        .into_iter()
        .map(|n| {
            let p = series.coeff(&n).scale(&n.factorial());
            (n, p)
        })
        .collect()
}

/// Compare the recurrence table against the generating-function oracle for
/// every `|n| <= order`.
pub fn check_genfun(
    table: &MeixnerTable,
    order: u32,
) -> Result<Vec<RelationReport>, CoreError> {
    let p = table.params();
    let oracle = genfun_table(p, order);
    let mut out = Vec::new();
    for (n, expected) in oracle {
        let built = table.poly(&n);
        out.push(RelationReport::compare(
            "genfun",
            format!("{} n={} order={}", p.tag(), n, order),
            built.as_ref(),
            &expected,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one_series_coefficients_are_frozen() {
        // beta = 1, c = 1/2: the series is (1 + 2z)^x (1 + z)^(-x-1);
        // [z^1] = x - 1 and 2! [z^2] = x^2 - 5x + 2.
        let p = Params::new(q("1"), vec![q("1/2")]).unwrap();
        let table = genfun_table(&p, 2);
        assert_eq!(
            table[&MultiIndex::new(vec![1])],
            PolyX::from_coeffs(vec![q("-1"), q("1")])
        );
        assert_eq!(
            table[&MultiIndex::new(vec![2])],
            PolyX::from_coeffs(vec![q("2"), q("-5"), q("1")])
        );
    }

    #[test]
    fn first_level_matches_closed_form() {
        let p = Params::new(q("3/2"), vec![q("1/3"), q("1/2")]).unwrap();
        let table = genfun_table(&p, 1);
        for i in 1..=2 {
            let expected = crate::meixner::first_level_closed_form(&p, i);
            assert_eq!(table[&MultiIndex::unit(2, i)], expected);
        }
    }

    #[test]
    fn oracle_agrees_with_recurrence_construction() {
        let p2 = Params::new(q("3/2"), vec![q("1/3"), q("1/2")]).unwrap();
        let t2 = MeixnerTable::new(p2);
        for rep in check_genfun(&t2, 4).unwrap() {
            assert!(rep.pass, "{}", rep.summary_line());
        }
        let p3 = Params::new(q("2"), vec![q("1/5"), q("1/3"), q("1/2")]).unwrap();
        let t3 = MeixnerTable::new(p3);
        for rep in check_genfun(&t3, 3).unwrap() {
            assert!(rep.pass, "{}", rep.summary_line());
        }
    }

    #[test]
    fn oracle_flags_a_corrupted_table() {
        let p = Params::new(q("1"), vec![q("1/2")]).unwrap();
        let t = MeixnerTable::new_corrupted(p);
        let reports = check_genfun(&t, 2).unwrap();
        assert!(reports.iter().any(|r| !r.pass));
    }

    #[test]
    fn series_product_truncates() {
        let w = vec![q("1"), q("1")];
        let s = SeriesZ::linear_form(2, 1, &w);
        let sq = s.mul(&s);
        // Total degree 2 exceeds the order, so the square is empty.
        assert_eq!(sq, SeriesZ::zero(2, 1));
    }
}
