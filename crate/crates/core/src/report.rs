//! Pass/fail records for verified identities.

use serde_json::{json, Value};

use crate::freealg::{NcPolynomial, TensorElement};

#[derive(Clone, Debug)]
pub struct IdentityReport {
    pub identity: String,
    pub passed: bool,
    /// Text form of the residual (`0` when the identity holds).
    pub residual: String,
    pub residual_json: Value,
}

impl IdentityReport {
    pub fn from_polynomial(identity: impl Into<String>, residual: &NcPolynomial) -> Self {
        Self {
            identity: identity.into(),
            passed: residual.is_zero(),
            residual: residual.to_string(),
            residual_json: residual.to_json(),
        }
    }

    pub fn from_tensor(identity: impl Into<String>, residual: &TensorElement) -> Self {
        Self {
            identity: identity.into(),
            passed: residual.is_zero(),
            residual: residual.to_string(),
            residual_json: residual.to_json(),
        }
    }

    /// `{"identity": .., "status": "pass"|"fail", "residual": ..}`.
    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "status": if self.passed { "pass" } else { "fail" },
            "residual": self.residual_json,
        })
    }
}

pub fn all_passed(reports: &[IdentityReport]) -> bool {
    reports.iter().all(|r| r.passed)
}

pub fn reports_json(reports: &[IdentityReport]) -> Value {
    Value::Array(reports.iter().map(IdentityReport::to_json).collect())
}
