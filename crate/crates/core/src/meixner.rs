//! The polynomial table: exact monic multiple Meixner polynomials of the
//! first kind, indexed by multi-indices.
//!
//! Polynomials are produced by the nearest-neighbor recurrence
//!
//! ```text
//! M_{n+e_i}(x) = (x - A_i(n)) M_n(x) - sum_k B_k(n) M_{n-e_k}(x)
//! A_i(n) = c_i/(1-c_i) (beta + |n|) + sum_k n_k/(1-c_k)
//! B_k(n) = c_k/(1-c_k)^2 n_k (beta + |n| - 1)
//! ```
//!
//! starting from `M_0 = 1`. The canonical construction path raises
//! coordinate 1 first, then coordinate 2, and so on; results are memoized.
//! That any other admissible path yields the same polynomial is a theorem
//! the checks in [`crate::relations`] verify rather than an assumption.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use crate::error::CoreError;
use crate::index::MultiIndex;
use crate::params::Params;
use crate::poly::PolyX;
use crate::rational::Rational;

/// Memoized table of the family `M_n` for one parameter set.
pub struct MeixnerTable {
    params: Params,
    cache: RefCell<HashMap<MultiIndex, Rc<PolyX>>>,
    corrupt_first_step: bool,
}

impl MeixnerTable {
    pub fn new(params: Params) -> Self {
        MeixnerTable {
            params,
            cache: RefCell::new(HashMap::new()),
            corrupt_first_step: false,
        }
    }

    /// Test-only hook: adds 1 to the diagonal recurrence coefficient of the
    /// very first canonical step (direction 1 at `n = 0`), deliberately
    /// breaking every identity downstream of that entry.
    pub fn new_corrupted(params: Params) -> Self {
        MeixnerTable {
            params,
            cache: RefCell::new(HashMap::new()),
            corrupt_first_step: true,
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    fn check_index(&self, n: &MultiIndex) -> Result<(), CoreError> {
        if n.len() != self.params.r() {
            return Err(CoreError::IndexLengthMismatch {
                expected: self.params.r(),
                found: n.len(),
            });
        }
        Ok(())
    }

    /// Diagonal recurrence coefficient `A_i(n)`.
    pub fn recurrence_diag(&self, i: usize, n: &MultiIndex) -> Rational {
        let p = &self.params;
        let one = Rational::one();
        let ci = p.c(i);
        let mut a = ci / &(&one - ci) * (p.beta() + &Rational::from(n.total()));
        for k in 1..=p.r() {
            a = a + Rational::from(n.get(k)) / (&one - p.c(k));
        }
        if self.corrupt_first_step && i == 1 && n.is_zero() {
            a = a + one;
        }
        a
    }

    /// Down-step recurrence coefficient `B_k(n)`.
    pub fn recurrence_down(&self, k: usize, n: &MultiIndex) -> Rational {
        let p = &self.params;
        let one = Rational::one();
        let ck = p.c(k);
        let omc = &one - ck;
        ck / &(&omc * &omc)
            * Rational::from(n.get(k))
            * (p.beta() + &Rational::from(n.total()) - &one)
    }

    /// One recurrence step in direction `i` from index `m`, pulling the
    /// required lower polynomials through `fetch`.
    fn step_with(&self, i: usize, m: &MultiIndex, fetch: &dyn Fn(&MultiIndex) -> PolyX) -> PolyX {
        let x_minus_a = PolyX::from_coeffs(vec![-self.recurrence_diag(i, m), Rational::one()]);
        let mut out = &x_minus_a * &fetch(m);
        for k in 1..=self.params.r() {
            if let Some(down) = m.dec(k) {
                out = &out - &fetch(&down).scale(&self.recurrence_down(k, m));
            }
        }
        out
    }

    /// `M_n` along the canonical path (memoized).
    pub fn poly(&self, n: &MultiIndex) -> Rc<PolyX> {
        self.check_index(n).expect("index length mismatch");
        if let Some(hit) = self.cache.borrow().get(n) {
            return Rc::clone(hit);
        }
        let value = if n.is_zero() {
            PolyX::one()
        } else {
            // Last canonical step raises the highest nonzero coordinate.
            let j = (1..=self.params.r())
                .rev()
                .find(|&k| n.get(k) > 0)
                .expect("nonzero index");
            let m = n.dec(j).expect("coordinate is nonzero");
            self.step_with(j, &m, &|w| self.poly(w).as_ref().clone())
        };
        let rc = Rc::new(value);
        self.cache
            .borrow_mut()
            .insert(n.clone(), Rc::clone(&rc));
        rc
    }

    /// `M_n(x)` by Horner evaluation of the stored coefficients.
    pub fn eval(&self, n: &MultiIndex, x: &Rational) -> Rational {
        self.poly(n).eval(x)
    }

    /// Build the polynomial by walking an explicit direction sequence from
    /// the zero index; values created on the walk shadow the canonical table,
    /// off-path lower neighbours fall back to it.
    pub fn poly_along_path(&self, path: &[usize]) -> Result<PolyX, CoreError> {
        let r = self.params.r();
        for &d in path {
            if !(1..=r).contains(&d) {
                return Err(CoreError::DirectionOutOfRange { i: d, r });
            }
        }
        let mut local: HashMap<MultiIndex, PolyX> = HashMap::new();
        let mut cur = MultiIndex::zeros(r);
        local.insert(cur.clone(), PolyX::one());
        for &d in path {
            let next = cur.inc(d);
            let val = self.step_with(d, &cur, &|w| {
                local
                    .get(w)
                    .cloned()
                    .unwrap_or_else(|| self.poly(w).as_ref().clone())
            });
            local.insert(next.clone(), val);
            cur = next;
        }
        Ok(local.remove(&cur).expect("path endpoint computed"))
    }
}

/// The closed form of the first-level polynomials:
/// `M_{e_i}(x) = x - c_i beta / (1 - c_i)`.
pub fn first_level_closed_form(params: &Params, i: usize) -> PolyX {
    let ci = params.c(i);
    let shift = ci * params.beta() / (Rational::one() - ci);
    PolyX::from_coeffs(vec![-shift, Rational::one()])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::enumerate_up_to;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(coeffs: &[&str]) -> PolyX {
        PolyX::from_coeffs(coeffs.iter().map(|s| q(s)).collect())
    }

    fn params1() -> Params {
        Params::new(q("1"), vec![q("1/2")]).unwrap()
    }

    fn params2() -> Params {
        Params::new(q("3/2"), vec![q("1/3"), q("1/2")]).unwrap()
    }

    #[test]
    fn base_case_and_first_levels() {
        let t = MeixnerTable::new(params1());
        assert_eq!(*t.poly(&MultiIndex::zeros(1)), PolyX::one());
        // M_1 = x - c beta/(1-c) = x - 1
        assert_eq!(*t.poly(&MultiIndex::new(vec![1])), p(&["-1", "1"]));
        assert_eq!(
            *t.poly(&MultiIndex::new(vec![1])),
            first_level_closed_form(t.params(), 1)
        );
    }

    #[test]
    fn worked_degree_two_example() {
        // r=1, beta=1, c=1/2: M_2 = x^2 - 5x + 2
        let t = MeixnerTable::new(params1());
        assert_eq!(*t.poly(&MultiIndex::new(vec![2])), p(&["2", "-5", "1"]));
        assert_eq!(t.eval(&MultiIndex::new(vec![2]), &q("5")), q("2"));
    }

    #[test]
    fn monic_with_correct_degree() {
        let t = MeixnerTable::new(params2());
        for n in enumerate_up_to(2, 5) {
            let m = t.poly(&n);
            assert_eq!(m.degree(), Some(n.total() as usize), "degree at {n}");
            assert!(m.is_monic(), "monic at {n}");
        }
    }

    #[test]
    fn symmetric_under_weight_permutation() {
        let t = MeixnerTable::new(params2());
        let perm = [1usize, 0];
        let tp = MeixnerTable::new(t.params().permuted(&perm));
        for n in enumerate_up_to(2, 4) {
            assert_eq!(
                *t.poly(&n),
                *tp.poly(&n.permute(&perm)),
                "permutation symmetry at {n}"
            );
        }
    }

    #[test]
    fn path_walks_reach_the_canonical_entry() {
        let t = MeixnerTable::new(params2());
        let target = MultiIndex::new(vec![2, 1]);
        for path in [
            vec![1usize, 1, 2],
            vec![1, 2, 1],
            vec![2, 1, 1],
        ] {
            let built = t.poly_along_path(&path).unwrap();
            assert_eq!(built, *t.poly(&target), "path {path:?}");
        }
        assert!(t.poly_along_path(&[3]).is_err());
    }

    #[test]
    fn corruption_changes_the_first_entry() {
        let good = MeixnerTable::new(params1());
        let bad = MeixnerTable::new_corrupted(params1());
        let e1 = MultiIndex::new(vec![1]);
        assert_ne!(*good.poly(&e1), *bad.poly(&e1));
        assert_eq!(*bad.poly(&e1), p(&["-2", "1"])); // x - 1 - 1
    }

    #[test]
    #[should_panic(expected = "index length mismatch")]
    fn index_length_is_enforced() {
        let t = MeixnerTable::new(params1());
        let _ = t.poly(&MultiIndex::new(vec![1, 1]));
    }
}
