//! Exact sparse matrices and dense vectors over the truncated monomial
//! basis.
//!
//! Matrices are stored column-major: column `j` holds the image of the
//! `j`-th basis monomial as a sorted map from row index to coefficient.
//! All arithmetic is exact over [`Rational`]. Operators are built in a
//! single pass with [`FockMatrix::from_action`], which applies an exact
//! symbolic action to each basis monomial and silently drops any image
//! monomial beyond the degree cut — that drop is the one and only place
//! truncation enters, and it is what makes the top columns of products
//! unfaithful (see [`eq_on_columns`](FockMatrix::eq_on_columns)).

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;
use serde_json::{json, Value};

use crate::error::CoreError;
use crate::fock::basis::FockBasis;
use crate::index::MultiIndex;
use crate::rational::Rational;

/// Exact sparse matrix acting on a [`FockBasis`].
#[derive(Clone, Debug, PartialEq)]
pub struct FockMatrix {
    basis: Arc<FockBasis>,
    cols: Vec<BTreeMap<usize, Rational>>,
}

impl FockMatrix {
    pub fn zero(basis: Arc<FockBasis>) -> Self {
        let cols = vec![BTreeMap::new(); basis.len()];
        FockMatrix { basis, cols }
    }

    pub fn identity(basis: Arc<FockBasis>) -> Self {
        let mut m = FockMatrix::zero(basis);
        for j in 0..m.cols.len() {
            m.cols[j].insert(j, Rational::one());
        }
        m
    }

    /// Diagonal matrix with entry `f(n)` at the column of `z^n`.
    pub fn diagonal<F>(basis: Arc<FockBasis>, f: F) -> Self
    where
        F: Fn(&MultiIndex) -> Rational,
    {
        let mut m = FockMatrix::zero(basis);
        for j in 0..m.cols.len() {
            let v = f(m.basis.monomial(j));
            if !v.is_zero() {
                m.cols[j].insert(j, v);
            }
        }
        m
    }

    /// Build a matrix from the symbolic action of an operator on monomials.
    ///
    /// `action(n)` lists the terms of `Op z^n` as `(m, coeff)` pairs. Terms
    /// whose monomial exceeds the degree cut are discarded; duplicate
    /// monomials are accumulated.
    pub fn from_action<F>(basis: Arc<FockBasis>, action: F) -> Self
    where
        F: Fn(&MultiIndex) -> Vec<(MultiIndex, Rational)>,
    {
        let mut m = FockMatrix::zero(basis);
        for j in 0..m.cols.len() {
            let terms = action(m.basis.monomial(j));
            for (target, coeff) in terms {
                if coeff.is_zero() {
                    continue;
                }
                if let Some(row) = m.basis.position(&target) {
                    let slot = m.cols[j].entry(row).or_insert_with(Rational::zero);
                    *slot = slot.clone() + coeff;
                    if slot.is_zero() {
                        m.cols[j].remove(&row);
                    }
                }
            }
        }
        m
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn basis_arc(&self) -> Arc<FockBasis> {
        Arc::clone(&self.basis)
    }

    pub fn entry(&self, row: usize, col: usize) -> Rational {
        self.cols[col].get(&row).cloned().unwrap_or_else(Rational::zero)
    }

    /// Number of stored nonzero entries.
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// Number of stored entries in one column.
    pub fn col_nnz(&self, col: usize) -> usize {
        self.cols[col].len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(BTreeMap::is_empty)
    }

    pub fn scale(&self, s: &Rational) -> FockMatrix {
        if s.is_zero() {
            return FockMatrix::zero(Arc::clone(&self.basis));
        }
        let cols = self
            .cols
            .iter()
            .map(|col| {
                col.iter()
                    .map(|(&row, v)| (row, v.clone() * s.clone()))
                    .collect()
            })
            .collect();
        FockMatrix {
            basis: Arc::clone(&self.basis),
            cols,
        }
    }

    /// Shift by a scalar multiple of the identity: `self + s*I`.
    pub fn add_scalar(&self, s: &Rational) -> FockMatrix {
        let mut m = self.clone();
        for j in 0..m.cols.len() {
            let slot = m.cols[j].entry(j).or_insert_with(Rational::zero);
            *slot = slot.clone() + s.clone();
            if slot.is_zero() {
                m.cols[j].remove(&j);
            }
        }
        m
    }

    pub fn commutator(&self, other: &FockMatrix) -> FockMatrix {
        &(self * other) - &(other * self)
    }

    pub fn apply(&self, v: &FockVector) -> FockVector {
        assert_eq!(*self.basis, *v.basis, "basis mismatch in apply");
        let mut out = FockVector::zero(Arc::clone(&self.basis));
        for (j, col) in self.cols.iter().enumerate() {
            if v.entries[j].is_zero() {
                continue;
            }
            for (&row, a) in col {
                out.entries[row] = out.entries[row].clone() + a.clone() * v.entries[j].clone();
            }
        }
        out
    }

    /// Compare on the columns of monomials with `|n| <= max_degree - margin`.
    ///
    /// Operators with raising parts push top-degree monomials past the cut,
    /// so a product of `m` such factors is only faithful on columns at least
    /// `m` degrees below the boundary. Rows are always compared in full.
    pub fn eq_on_columns(&self, other: &FockMatrix, margin: u32) -> bool {
        self.first_difference_on_columns(other, margin).is_none()
    }

    /// First `(row, col, lhs, rhs)` disagreement within the margin, in
    /// column-major order, or `None` when the matrices agree there.
    pub fn first_difference_on_columns(
        &self,
        other: &FockMatrix,
        margin: u32,
    ) -> Option<(usize, usize, Rational, Rational)> {
        assert_eq!(*self.basis, *other.basis, "basis mismatch in comparison");
        let cut = self.basis.max_degree().saturating_sub(margin);
        let ncols = self.basis.prefix_len(cut);
        for j in 0..ncols {
            let rows: std::collections::BTreeSet<usize> = self.cols[j]
                .keys()
                .chain(other.cols[j].keys())
                .copied()
                .collect();
            for row in rows {
                let a = self.entry(row, j);
                let b = other.entry(row, j);
                if a != b {
                    return Some((row, j, a, b));
                }
            }
        }
        None
    }

    /// Exponential of a nilpotent matrix, summed exactly until the powers
    /// vanish. Errors if the series has not terminated after `dim` steps,
    /// i.e. the matrix was not nilpotent.
    pub fn exp_nilpotent(&self) -> Result<FockMatrix, CoreError> {
        let dim = self.basis.len();
        let mut sum = FockMatrix::identity(Arc::clone(&self.basis));
        let mut term = FockMatrix::identity(Arc::clone(&self.basis));
        let mut k: usize = 1;
        loop {
            term = (&term * self).scale(&Rational::new(1, k as i64));
            if term.is_zero() {
                return Ok(sum);
            }
            sum = &sum + &term;
            k += 1;
            if k > dim {
                return Err(CoreError::Invalid(
                    "matrix exponential requires a nilpotent argument".into(),
                ));
            }
        }
    }

    pub fn to_dense_f64(&self) -> DMatrix<f64> {
        let dim = self.basis.len();
        let mut dense = DMatrix::zeros(dim, dim);
        for (j, col) in self.cols.iter().enumerate() {
            for (&row, v) in col {
                dense[(row, j)] = v.to_f64();
            }
        }
        dense
    }

    /// Serialize to the dump format: basis metadata plus a `(col, row)`
    /// sorted list of `[row, col, "p/q"]` entries.
    pub fn dump(&self) -> Value {
        let entries: Vec<Value> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(j, col)| {
                col.iter()
                    .map(move |(&row, v)| json!([row, j, v.to_string()]))
            })
            .collect();
        json!({
            "basis": {
                "modes": self.basis.modes(),
                "max_degree": self.basis.max_degree(),
                "ordering": "graded-lex",
            },
            "entries": entries,
        })
    }
}

impl Add for &FockMatrix {
    type Output = FockMatrix;

    fn add(self, rhs: &FockMatrix) -> FockMatrix {
        assert_eq!(*self.basis, *rhs.basis, "basis mismatch in +");
        let mut out = self.clone();
        for (j, col) in rhs.cols.iter().enumerate() {
            for (&row, v) in col {
                let slot = out.cols[j].entry(row).or_insert_with(Rational::zero);
                *slot = slot.clone() + v.clone();
                if slot.is_zero() {
                    out.cols[j].remove(&row);
                }
            }
        }
        out
    }
}

impl Sub for &FockMatrix {
    type Output = FockMatrix;

    fn sub(self, rhs: &FockMatrix) -> FockMatrix {
        self + &(-rhs)
    }
}

impl Neg for &FockMatrix {
    type Output = FockMatrix;

    fn neg(self) -> FockMatrix {
        self.scale(&Rational::new(-1, 1))
    }
}

impl Mul for &FockMatrix {
    type Output = FockMatrix;

    /// Matrix product: column `j` of `self * rhs` is `self` applied to
    /// column `j` of `rhs`.
    fn mul(self, rhs: &FockMatrix) -> FockMatrix {
        assert_eq!(*self.basis, *rhs.basis, "basis mismatch in *");
        let mut out = FockMatrix::zero(Arc::clone(&self.basis));
        for (j, rcol) in rhs.cols.iter().enumerate() {
            for (&k, b) in rcol {
                for (&row, a) in &self.cols[k] {
                    let slot = out.cols[j].entry(row).or_insert_with(Rational::zero);
                    *slot = slot.clone() + a.clone() * b.clone();
                    if slot.is_zero() {
                        out.cols[j].remove(&row);
                    }
                }
            }
        }
        out
    }
}

/// Dense exact vector of monomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    basis: Arc<FockBasis>,
    entries: Vec<Rational>,
}

impl FockVector {
    pub fn zero(basis: Arc<FockBasis>) -> Self {
        let entries = vec![Rational::zero(); basis.len()];
        FockVector { basis, entries }
    }

    /// Vector with component `f(n)` at the position of `z^n`.
    pub fn from_fn<F>(basis: Arc<FockBasis>, f: F) -> Self
    where
        F: Fn(&MultiIndex) -> Rational,
    {
        let entries = basis.monomials().iter().map(f).collect();
        FockVector { basis, entries }
    }

    pub fn basis(&self) -> &FockBasis {
        &self.basis
    }

    pub fn component(&self, idx: usize) -> &Rational {
        &self.entries[idx]
    }

    pub fn scale(&self, s: &Rational) -> FockVector {
        FockVector {
            basis: Arc::clone(&self.basis),
            entries: self.entries.iter().map(|v| v.clone() * s.clone()).collect(),
        }
    }

    /// Compare on the components of monomials with `|n| <= max_degree - margin`.
    pub fn eq_on_degree(&self, other: &FockVector, margin: u32) -> bool {
        self.first_difference_on_degree(other, margin).is_none()
    }

    /// First `(position, lhs, rhs)` disagreement within the margin.
    pub fn first_difference_on_degree(
        &self,
        other: &FockVector,
        margin: u32,
    ) -> Option<(usize, Rational, Rational)> {
        assert_eq!(*self.basis, *other.basis, "basis mismatch in comparison");
        let cut = self.basis.max_degree().saturating_sub(margin);
        let len = self.basis.prefix_len(cut);
        (0..len).find_map(|i| {
            (self.entries[i] != other.entries[i])
                .then(|| (i, self.entries[i].clone(), other.entries[i].clone()))
        })
    }
}

impl Sub for &FockVector {
    type Output = FockVector;

    fn sub(self, rhs: &FockVector) -> FockVector {
        assert_eq!(*self.basis, *rhs.basis, "basis mismatch in -");
        FockVector {
            basis: Arc::clone(&self.basis),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn lowering(basis: &Arc<FockBasis>) -> FockMatrix {
        FockMatrix::from_action(Arc::clone(basis), |n| match n.dec(1) {
            Some(m) => vec![(m, rat(n.get(1) as i64, 1))],
            None => vec![],
        })
    }

    fn raising(basis: &Arc<FockBasis>) -> FockMatrix {
        FockMatrix::from_action(Arc::clone(basis), |n| {
            vec![(n.inc(1), Rational::one())]
        })
    }

    #[test]
    fn product_matches_composed_action() {
        let basis = Arc::new(FockBasis::new(1, 6));
        let a = lowering(&basis);
        let adag = raising(&basis);
        // a a\dag z^n = (n+1) z^n wherever z^{n+1} survives the cut.
        let prod = &a * &adag;
        for j in 0..basis.len() - 1 {
            let n = basis.monomial(j).get(1) as i64;
            assert_eq!(prod.entry(j, j), rat(n + 1, 1));
        }
        // Top column: the raising step was dropped, so the product is zero.
        assert!(prod.cols[basis.len() - 1].is_empty());
    }

    #[test]
    fn canonical_commutator_is_identity_away_from_the_cut() {
        let basis = Arc::new(FockBasis::new(1, 6));
        let comm = lowering(&basis).commutator(&raising(&basis));
        let id = FockMatrix::identity(Arc::clone(&basis));
        assert!(comm.eq_on_columns(&id, 1));
        assert!(!comm.eq_on_columns(&id, 0));
        let (row, col, lhs, rhs) = comm.first_difference_on_columns(&id, 0).unwrap();
        // In the top column the raising term is lost and only -a a\dag... = -n
        // survives: [a, a\dag] z^N = -N z^N instead of z^N.
        assert_eq!((row, col), (basis.len() - 1, basis.len() - 1));
        assert_eq!(lhs, rat(-6, 1));
        assert_eq!(rhs, rat(1, 1));
    }

    #[test]
    fn exp_of_lowering_has_binomial_entries() {
        let basis = Arc::new(FockBasis::new(1, 5));
        let exp = lowering(&basis).exp_nilpotent().unwrap();
        // exp(a) z^n = sum_k binom(n, k) z^{n-k}.
        for col in 0..basis.len() {
            for row in 0..basis.len() {
                let (n, m) = (col as i64, row as i64);
                let expected = if m <= n {
                    let mut b = Rational::one();
                    for t in 0..(n - m) {
                        b = b * rat(n - t, 1) / rat(t + 1, 1);
                    }
                    b
                } else {
                    Rational::zero()
                };
                assert_eq!(exp.entry(row, col), expected);
            }
        }
    }

    #[test]
    fn exp_rejects_non_nilpotent_input() {
        let basis = Arc::new(FockBasis::new(1, 3));
        let id = FockMatrix::identity(Arc::clone(&basis));
        assert!(id.exp_nilpotent().is_err());
    }

    #[test]
    fn apply_matches_matrix_columns() {
        let basis = Arc::new(FockBasis::new(2, 3));
        let h0 = FockMatrix::diagonal(Arc::clone(&basis), |n| rat(n.total() as i64, 1));
        let v = FockVector::from_fn(Arc::clone(&basis), |_| Rational::one());
        let w = h0.apply(&v);
        for idx in 0..basis.len() {
            assert_eq!(*w.component(idx), rat(basis.monomial(idx).total() as i64, 1));
        }
    }

    #[test]
    fn dump_is_column_major_sorted() {
        let basis = Arc::new(FockBasis::new(1, 2));
        let a = lowering(&basis);
        let value = a.dump();
        assert_eq!(
            value.to_string(),
            r#"{"basis":{"max_degree":2,"modes":1,"ordering":"graded-lex"},"entries":[[0,1,"1"],[1,2,"2"]]}"#
        );
    }

    #[test]
    fn dense_conversion_preserves_entries() {
        let basis = Arc::new(FockBasis::new(1, 3));
        let a = lowering(&basis);
        let dense = a.to_dense_f64();
        assert_eq!(dense[(2, 3)], 3.0);
        assert_eq!(dense[(0, 1)], 1.0);
        assert_eq!(dense[(3, 3)], 0.0);
    }

    #[test]
    fn scalar_shift_adds_to_the_diagonal() {
        let basis = Arc::new(FockBasis::new(2, 2));
        let h0 = FockMatrix::diagonal(Arc::clone(&basis), |n| rat(n.total() as i64, 1));
        let shifted = h0.add_scalar(&rat(3, 2));
        for j in 0..basis.len() {
            let expected = rat(basis.monomial(j).total() as i64, 1) + rat(3, 2);
            assert_eq!(shifted.entry(j, j), expected);
        }
        // Shifting back cancels exactly, leaving a genuinely sparse zero.
        assert!(shifted.add_scalar(&rat(-3, 2)).nnz() == h0.nnz());
    }
}
