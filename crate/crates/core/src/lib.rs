//! Exact construction and verification of multiple Meixner polynomials of
//! the first kind, together with the non-Hermitian oscillator model that
//! realizes them.
//!
//! Everything is computed in exact rational arithmetic. The crate offers:
//!
//! * construction of the monic polynomial family `M_n` for a multi-index
//!   `n` from the nearest-neighbour recurrence ([`MeixnerTable`]), plus an
//!   independent generating-function route ([`genfun`]);
//! * checks of the algebraic identities the family satisfies: pairwise and
//!   non-nearest-neighbour recurrences, contiguity relations in `beta`,
//!   higher-order difference equations in `x` and in `beta`, and
//!   orthogonality with respect to the `r` negative-binomial-type weights;
//! * an exact sparse-matrix model of the associated oscillator Hamiltonians
//!   on truncated Fock bases ([`fock`]).
//!
//! Every check returns a [`RelationReport`] carrying the compared values,
//! so failures are inspectable rather than just boolean.

pub mod diffeq;
pub mod error;
pub mod fock;
pub mod genfun;
pub mod index;
pub mod meixner;
pub mod moments;
pub mod params;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod relations;
pub mod report;
pub mod suite;

pub use error::CoreError;
pub use fock::{FockBasis, FockMatrix, FockVector};
pub use index::MultiIndex;
pub use meixner::MeixnerTable;
pub use params::Params;
pub use poly::PolyX;
pub use ratfunc::RatFuncC;
pub use rational::Rational;
pub use report::RelationReport;
