//! JSON and Markdown rendering of suite reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::report::{CheckReport, CheckStatus, SuiteReport};

/// Identifies the JSON layout produced by [`to_json`].
pub const SCHEMA_VERSION: &str = "invofix/1";

#[derive(Serialize)]
struct Envelope<'a> {
    version: &'static str,
    checks: &'a [CheckReport],
}

/// Canonical JSON: compact, ordered keys, no volatile fields.  Two runs
/// over the same inputs produce identical bytes.
pub fn to_json(report: &SuiteReport) -> String {
    serde_json::to_string(&Envelope {
        version: SCHEMA_VERSION,
        checks: &report.checks,
    })
    .expect("reports always serialize")
}

/// Markdown summary: a counts line, then one table per check id.
pub fn to_markdown(report: &SuiteReport) -> String {
    let (pass, fail, mismatch) = report.counts();
    let mut out = String::from("# Verification report\n\n");
    let _ = writeln!(
        out,
        "{} checks: {pass} pass, {fail} fail, {mismatch} paper_mismatch.",
        report.checks.len()
    );
    let mut families: BTreeMap<&str, Vec<&CheckReport>> = BTreeMap::new();
    for check in &report.checks {
        families.entry(&check.id).or_default().push(check);
    }
    for (id, checks) in families {
        let _ = write!(
            out,
            "\n## {id}\n\n| params | status | witness | oracle | ms |\n|---|---|---|---|---|\n"
        );
        for check in checks {
            let params = check
                .params
                .iter()
                .map(|(k, v)| format!("{k}={}", value_text(v)))
                .collect::<Vec<_>>()
                .join(" ");
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {} |",
                cell(&params),
                status_text(check.status),
                cell(check.witness.as_deref().unwrap_or("")),
                cell(&check.oracle),
                check.elapsed_ms
            );
        }
    }
    out
}

fn status_text(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::PaperMismatch => "paper_mismatch",
    }
}

fn value_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn cell(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::params;

    fn demo(id: &str, status: CheckStatus, witness: Option<&str>) -> CheckReport {
        CheckReport {
            id: id.to_string(),
            params: params([("n", 6.into())]),
            status,
            witness: witness.map(str::to_string),
            oracle: "none".to_string(),
            elapsed_ms: 3,
        }
    }

    #[test]
    fn empty_report_renders_the_bare_envelope() {
        let report = SuiteReport { checks: Vec::new() };
        assert_eq!(to_json(&report), r#"{"version":"invofix/1","checks":[]}"#);
    }

    #[test]
    fn json_keeps_field_order_and_skips_volatile_fields() {
        let report = SuiteReport {
            checks: vec![demo("demo", CheckStatus::PaperMismatch, Some("w"))],
        };
        assert_eq!(
            to_json(&report),
            r#"{"version":"invofix/1","checks":[{"id":"demo","params":{"n":6},"status":"paper_mismatch","witness":"w","oracle":"none"}]}"#
        );
    }

    #[test]
    fn markdown_groups_by_check_id() {
        let report = SuiteReport {
            checks: vec![
                demo("alpha", CheckStatus::Pass, None),
                demo("beta", CheckStatus::Fail, Some("bad")),
            ],
        };
        let text = to_markdown(&report);
        assert!(text.starts_with("# Verification report\n\n2 checks: 1 pass, 1 fail, 0 paper_mismatch.\n"));
        assert!(text.contains("\n## alpha\n"));
        assert!(text.contains("\n## beta\n"));
        assert!(text.contains("| n=6 | fail | bad | none | 3 |"));
    }

    #[test]
    fn markdown_escapes_table_breakers() {
        let report = SuiteReport {
            checks: vec![demo("demo", CheckStatus::Fail, Some("a|b\nc"))],
        };
        let text = to_markdown(&report);
        assert!(text.contains("a\\|b c"));
    }
}
