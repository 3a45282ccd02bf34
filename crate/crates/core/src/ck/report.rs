use std::collections::BTreeMap;

use serde::Serialize;

/// Outcome of an exact verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<Failure>,
    pub params: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub detail: String,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.passed == self.cases
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}
