//! JSON form of a command's output. Every number is a string in `p/q`
//! form; optional sections are omitted when empty.

use serde::{Deserialize, Serialize};

use crate::report::CheckResult;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub k: String,
    pub poly: String,
    /// `f_k(m)`, when the class is known to be polynomial in `m`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counting: Option<String>,
    #[serde(default)]
    pub truncated: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxEntry {
    pub cone: Vec<usize>,
    pub v: Vec<i64>,
    pub q: Vec<String>,
    pub psi: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeEntry {
    pub cone: Vec<usize>,
    pub h: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub j: String,
    pub dim: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub rank: usize,
    pub complete: bool,
    pub refinement: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta0: Option<String>,
    /// Largest exponent to which `delta0` is exact, when it is a truncation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_to: Option<String>,
    #[serde(rename = "delta_Q", default, skip_serializing_if = "Option::is_none")]
    pub delta_q: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ehrhart: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub by_class: Vec<ClassEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub boxes: Vec<BoxEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub h_vectors: Vec<ConeEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub betti: Vec<BettiEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_prime: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
