//! Exact sparse-matrix model of the oscillator algebra on truncated
//! monomial bases.
//!
//! The infinite-dimensional picture places the polynomial family inside a
//! Bargmann-style space spanned by monomials `z^n` in `r` complex
//! variables. This module truncates that space at a total degree `N`,
//! builds every operator of interest as an exact sparse matrix over
//! [`Rational`](crate::Rational) entries, and checks the algebraic
//! identities the operators satisfy.
//!
//! Truncation is lossy at the top of the basis: any operator containing a
//! raising factor maps the degree-`N` monomials partly out of the retained
//! space, so products and commutators are only faithful on columns a few
//! degrees below the cut. Every comparison therefore carries an explicit
//! *margin*: [`FockMatrix::eq_on_columns`](matrix::FockMatrix::eq_on_columns)
//! with margin `m` compares only the columns indexed by monomials of total
//! degree at most `N - m`. The checks in [`checks`] use the smallest margin
//! that is actually sufficient, and [`checks::check_boundary_artifact`]
//! demonstrates that the margins are tight by exhibiting the exact defect
//! in the top-degree column.

pub mod basis;
pub mod checks;
pub mod matrix;
pub mod ops;
pub mod spectrum;

pub use basis::FockBasis;
pub use matrix::{FockMatrix, FockVector};
pub use ops::OpName;
