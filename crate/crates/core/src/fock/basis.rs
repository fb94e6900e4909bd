//! Truncated monomial basis `{ z^n : |n| <= N }` in graded lexicographic
//! order.

use std::collections::HashMap;

use crate::index::{enumerate_up_to, MultiIndex};

/// Finite ordered basis of monomials `z^n` with `|n| <= max_degree`.
///
/// Basis vectors are enumerated in graded lexicographic order (total degree
/// first, then lexicographic within a degree), which keeps every truncation
/// `|n| <= d` a contiguous prefix. Positions are cached both ways so that
/// matrix construction can translate between flat indices and multi-indices
/// in constant time.
#[derive(Clone, Debug)]
pub struct FockBasis {
    modes: usize,
    max_degree: u32,
    monomials: Vec<MultiIndex>,
    positions: HashMap<MultiIndex, usize>,
}

impl FockBasis {
    pub fn new(modes: usize, max_degree: u32) -> Self {
        let monomials = enumerate_up_to(modes, max_degree);
        let positions = monomials
            .iter()
            .enumerate()
            .map(|(p, n)| (n.clone(), p))
            .collect();
        FockBasis {
            modes,
            max_degree,
            monomials,
            positions,
        }
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Number of basis monomials, `binom(max_degree + modes, modes)`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Monomial exponent at flat position `idx`.
    pub fn monomial(&self, idx: usize) -> &MultiIndex {
        &self.monomials[idx]
    }

    /// Flat position of `z^n`, or `None` if `|n|` exceeds the cut.
    pub fn position(&self, n: &MultiIndex) -> Option<usize> {
        self.positions.get(n).copied()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    /// Positions of all monomials with `|n| <= degree` (a prefix).
    pub fn prefix_len(&self, degree: u32) -> usize {
        self.monomials
            .iter()
            .take_while(|n| n.total() <= degree)
            .count()
    }
}

impl PartialEq for FockBasis {
    fn eq(&self, other: &Self) -> bool {
        self.modes == other.modes && self.max_degree == other.max_degree
    }
}

impl Eq for FockBasis {}
