//! Outcome of a named verification, shared by the library checks and the
//! CLI reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    /// Hypotheses as `key: value` strings, e.g. `complete: true`.
    pub hypotheses: Vec<String>,
    pub status: Status,
    pub pass: bool,
    pub detail: String,
}

impl CheckResult {
    /// `Ok` passes, precondition errors skip, anything else fails.
    pub fn from_result(name: &str, hypotheses: Vec<String>, r: Result<String>) -> Self {
        let (status, detail) = match r {
            Ok(d) => (Status::Pass, d),
            Err(e) if e.is_precondition() => (Status::Skipped, e.to_string()),
            Err(e) => (Status::Fail, e.to_string()),
        };
        Self {
            name: name.into(),
            hypotheses,
            pass: status == Status::Pass,
            status,
            detail,
        }
    }

    pub fn line(&self) -> String {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        format!("{tag} {}: {}", self.name, self.detail)
    }
}

/// Converts a failed boolean into a check error.
pub fn ensure(cond: bool, err: impl FnOnce() -> Error) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(err())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses() {
        let ok = CheckResult::from_result("a", vec![], Ok("fine".into()));
        assert!(ok.pass);
        let skip = CheckResult::from_result(
            "b",
            vec!["complete: false".into()],
            Err(Error::PreconditionUnmet("fan is not complete".into())),
        );
        assert_eq!(skip.status, Status::Skipped);
        assert_eq!(skip.line(), "SKIPPED b: precondition unmet: fan is not complete");
        let fail = CheckResult::from_result("c", vec![], Err(Error::CheckFailed("x".into())));
        assert_eq!(fail.status, Status::Fail);
        let json = serde_json::to_string(&skip).unwrap();
        assert!(json.contains("\"status\":\"skipped\""));
        assert_eq!(serde_json::from_str::<CheckResult>(&json).unwrap(), skip);
    }
}
