//! Library-level error type.

use crate::params::ParamsError;
use crate::rational::Rational;

/// Errors surfaced by checks and constructors (all map to usage/validation
/// failures at the CLI boundary; internal invariant violations panic instead).
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error(transparent)]
    InvalidParams(#[from] ParamsError),
    #[error("multi-index has {found} entries but the family has r = {expected}")]
    IndexLengthMismatch { expected: usize, found: usize },
    #[error("direction i = {i} out of range 1..={r}")]
    DirectionOutOfRange { i: usize, r: usize },
    #[error("relation `{relation}` requires a direction i")]
    NeedsDirection { relation: String },
    #[error("relation `{relation}` uses the beta-1 table, which requires beta > 1 (got beta = {beta})")]
    BetaShiftOutOfRange { relation: String, beta: Rational },
    #[error("directions i = j = {i}; this check needs two distinct directions")]
    EqualDirections { i: usize },
    #[error("{relation} applies only to r = 1 families (got r = {r})")]
    RankOneOnly { relation: String, r: usize },
    #[error("truncation point x_max = {x_max} is too small: {reason}")]
    TruncationTooSmall { x_max: u32, reason: String },
    #[error("{0}")]
    Invalid(String),
}
