//! Multi-indices labelling the polynomial family and the Fock basis.
//!
//! A [`MultiIndex`] is a tuple `(n_1, ..., n_r)` of non-negative integers.
//! The ordering is graded lexicographic: indices compare first by total
//! degree `|n|`, then lexicographically entry by entry. This is also the
//! enumeration order of truncated basis listings, so sorted containers keyed
//! by `MultiIndex` iterate in basis order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rational::{factorial, Rational};

/// Multi-index `(n_1, ..., n_r)`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    /// The zero index of length `r`.
    pub fn zeros(r: usize) -> Self {
        MultiIndex(vec![0; r])
    }

    /// The unit index `e_i` of length `r` (`i` is 1-based).
    pub fn unit(r: usize, i: usize) -> Self {
        assert!((1..=r).contains(&i), "direction {i} out of range 1..={r}");
        let mut v = vec![0; r];
        v[i - 1] = 1;
        MultiIndex(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry `n_i`, 1-based.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// Total degree `|n| = n_1 + ... + n_r`.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&k| k == 0)
    }

    /// `n + e_i` (1-based `i`).
    pub fn inc(&self, i: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[i - 1] += 1;
        MultiIndex(v)
    }

    /// `n - e_i`, or `None` when `n_i = 0` (1-based `i`).
    pub fn dec(&self, i: usize) -> Option<MultiIndex> {
        if self.0[i - 1] == 0 {
            return None;
        }
        let mut v = self.0.clone();
        v[i - 1] -= 1;
        Some(MultiIndex(v))
    }

    /// `n! = n_1! n_2! ... n_r!`.
    pub fn factorial(&self) -> Rational {
        self.0
            .iter()
            .map(|&k| factorial(k as usize))
            .fold(Rational::one(), |a, b| a * b)
    }

    /// Apply a permutation of the coordinate slots: entry `i` of the result
    /// is entry `perm[i]` of `self` (0-based slots).
    pub fn permute(&self, perm: &[usize]) -> MultiIndex {
        assert_eq!(perm.len(), self.0.len());
        MultiIndex(perm.iter().map(|&j| self.0[j]).collect())
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Graded lexicographic order.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, n) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All multi-indices of length `r` with `|n| <= max_total`, in graded
/// lexicographic order.
pub fn enumerate_up_to(r: usize, max_total: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for d in 0..=max_total {
        append_of_degree(r, d, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

fn append_of_degree(r: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
    if prefix.len() == r - 1 {
        prefix.push(d);
        out.push(MultiIndex::new(prefix.clone()));
        prefix.pop();
        return;
    }
    for k in 0..=d {
        prefix.push(k);
        append_of_degree(r, d - k, prefix, out);
        prefix.pop();
    }
}
