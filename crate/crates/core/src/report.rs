//! Uniform pass/fail reports for identity checks.
//!
//! Every check produces a [`RelationReport`] naming the relation, the
//! instance it was evaluated at (indices, directions, evaluation points),
//! and the two sides that were compared. Failing aggregate checks always
//! surface the first violating instance in enumeration order.

use serde::Serialize;

/// Outcome of one identity check.
#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub relation: String,
    pub instance: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl RelationReport {
    pub fn new(
        relation: impl Into<String>,
        instance: impl Into<String>,
        pass: bool,
        lhs: impl Into<String>,
        rhs: impl Into<String>,
    ) -> Self {
        RelationReport {
            relation: relation.into(),
            instance: instance.into(),
            pass,
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    /// Report comparing two displayed values for equality.
    pub fn compare<T: PartialEq + std::fmt::Display>(
        relation: impl Into<String>,
        instance: impl Into<String>,
        lhs: &T,
        rhs: &T,
    ) -> Self {
        RelationReport::new(
            relation,
            instance,
            lhs == rhs,
            lhs.to_string(),
            rhs.to_string(),
        )
    }

    /// One-line summary, e.g. `PASS pairwise (r=2 ... n=(1,1) i=1 j=2)`.
    pub fn summary_line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        format!("{} {} [{}]", verdict, self.relation, self.instance)
    }
}

/// First failing report of a batch, if any.
pub fn first_failure(reports: &[RelationReport]) -> Option<&RelationReport> {
    reports.iter().find(|r| !r.pass)
}

/// True when every report in the batch passed.
pub fn all_pass(reports: &[RelationReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
