//! Check outcomes in the shape the batch verifier emits.

use serde::Serialize;
use std::collections::BTreeMap;

/// Pass means the computed value agrees with every stated claim touched
/// by the check.  Fail means an internal route disagreement or a broken
/// derived invariant: the engine cannot certify the computation.
/// PaperMismatch means the engine is internally consistent but the
/// computed ground truth differs from a stated display; the witness
/// carries the differing terms.
#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    PaperMismatch,
}

#[derive(Serialize, Clone, Debug)]
pub struct CheckReport {
    pub id: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub oracle: String,
    /// Wall time, shown in the human-readable table only.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

pub fn params(
    pairs: impl IntoIterator<Item = (&'static str, serde_json::Value)>,
) -> BTreeMap<String, serde_json::Value> {
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
}

#[derive(Serialize, Clone, Debug)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    /// (pass, fail, mismatch) counts.
    pub fn counts(&self) -> (usize, usize, usize) {
        let mut out = (0, 0, 0);
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => out.0 += 1,
                CheckStatus::Fail => out.1 += 1,
                CheckStatus::PaperMismatch => out.2 += 1,
            }
        }
        out
    }

    /// 0 when every check passed (mismatches tolerated unless strict),
    /// 2 otherwise.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let (_, fail, mismatch) = self.counts();
        if fail > 0 || (strict && mismatch > 0) {
            2
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_serializes_in_snake_case() {
        let s = serde_json::to_string(&CheckStatus::PaperMismatch).unwrap();
        assert_eq!(s, "\"paper_mismatch\"");
        assert_eq!(serde_json::to_string(&CheckStatus::Pass).unwrap(), "\"pass\"");
    }

    #[test]
    fn witness_and_elapsed_are_omitted_from_json() {
        let report = CheckReport {
            id: "demo".into(),
            params: params([("n", 6.into())]),
            status: CheckStatus::Pass,
            witness: None,
            oracle: "none".into(),
            elapsed_ms: 123,
        };
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(
            json,
            "{\"id\":\"demo\",\"params\":{\"n\":6},\"status\":\"pass\",\"oracle\":\"none\"}"
        );
    }

    #[test]
    fn exit_codes_follow_strictness() {
        let mk = |status| CheckReport {
            id: "x".into(),
            params: BTreeMap::new(),
            status,
            witness: None,
            oracle: String::new(),
            elapsed_ms: 0,
        };
        let ok = SuiteReport {
            checks: vec![mk(CheckStatus::Pass), mk(CheckStatus::PaperMismatch)],
        };
        assert_eq!(ok.exit_code(false), 0);
        assert_eq!(ok.exit_code(true), 2);
        let bad = SuiteReport {
            checks: vec![mk(CheckStatus::Fail)],
        };
        assert_eq!(bad.exit_code(false), 2);
        assert_eq!(bad.counts(), (0, 1, 0));
    }
}
