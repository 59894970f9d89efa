//! Identity-check reports shared by the verifier operations.
//!
//! Wire shape: `{ "identity": name, "order_checked": N, "status":
//! "pass"|"fail", "first_failure": {…}? }`.

use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Location and values of the first failing coefficient of an identity check.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Failure {
    /// Quarter q-exponent (or integer exponent for integer-graded checks).
    pub q_exponent: i64,
    /// Human-readable locus: u-exponents, evaluation point, sub-identity, …
    pub detail: String,
    pub lhs: String,
    pub rhs: String,
}

/// Outcome of one named identity checked through an order.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct IdentityReport {
    pub identity: String,
    pub order_checked: i64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<Failure>,
}

impl IdentityReport {
    pub fn pass(identity: impl Into<String>, order_checked: i64) -> Self {
        IdentityReport {
            identity: identity.into(),
            order_checked,
            status: Status::Pass,
            first_failure: None,
        }
    }

    pub fn fail(identity: impl Into<String>, order_checked: i64, failure: Failure) -> Self {
        IdentityReport {
            identity: identity.into(),
            order_checked,
            status: Status::Fail,
            first_failure: Some(failure),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// A bundle of identity reports; passes iff every member passes.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ReportSet {
    pub reports: Vec<IdentityReport>,
}

impl ReportSet {
    pub fn new(reports: Vec<IdentityReport>) -> Self {
        ReportSet { reports }
    }

    pub fn passed(&self) -> bool {
        self.reports.iter().all(IdentityReport::passed)
    }

    pub fn first_failure(&self) -> Option<&IdentityReport> {
        self.reports.iter().find(|r| !r.passed())
    }
}
