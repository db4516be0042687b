//! Deterministic rendering of suite reports, in a human-readable text
//! form and a machine-readable JSON form. Output depends only on the
//! report contents, never on time or environment, so it is byte-stable
//! for fixed input.

use serde::Serialize;

use crate::algebra::{CheckReport, SuiteReport, WitnessJson};
use crate::identities::formula_for;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<ReportFormat> {
        match s {
            "text" => Some(ReportFormat::Text),
            "json" => Some(ReportFormat::Json),
            _ => None,
        }
    }
}

#[derive(Serialize)]
struct CheckJson {
    identity: String,
    formula: String,
    passed: bool,
    witnesses: Vec<WitnessJson>,
    truncated: bool,
}

#[derive(Serialize)]
struct SuiteJson {
    suite: String,
    passed: bool,
    checks: Vec<CheckJson>,
}

fn check_to_json(c: &CheckReport) -> CheckJson {
    CheckJson {
        identity: c.identity.clone(),
        formula: formula_for(&c.identity).to_string(),
        passed: c.passed,
        witnesses: c.witnesses.iter().map(WitnessJson::from).collect(),
        truncated: c.truncated,
    }
}

pub fn render_json(report: &SuiteReport) -> String {
    let doc = SuiteJson {
        suite: report.suite.clone(),
        passed: report.passed(),
        checks: report.checks.iter().map(check_to_json).collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report always serializes");
    s.push('\n');
    s
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_text(report: &SuiteReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("suite {}: {}\n", report.suite, verdict(report.passed())));
    for check in &report.checks {
        let formula = formula_for(&check.identity);
        if formula.is_empty() {
            out.push_str(&format!("  {} {}\n", verdict(check.passed), check.identity));
        } else {
            out.push_str(&format!(
                "  {} {}  [{}]\n",
                verdict(check.passed),
                check.identity,
                formula
            ));
        }
        for w in &check.witnesses {
            let indices: Vec<String> = w.indices.iter().map(|i| i.to_string()).collect();
            let residual: Vec<String> =
                w.residual.entries().iter().map(|c| c.to_string()).collect();
            out.push_str(&format!(
                "      witness ({}): residual [{}]\n",
                indices.join(","),
                residual.join(", ")
            ));
        }
        if check.truncated {
            out.push_str("      (witness list truncated)\n");
        }
    }
    out
}

pub fn render(report: &SuiteReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Json => render_json(report),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CheckReport, Witness};
    use crate::linalg::Vector;
    use crate::rational::Rat;

    fn failing_suite() -> SuiteReport {
        let witness = Witness {
            indices: vec![0, 1],
            residual: Vector::from_entries(vec![Rat::zero(), Rat::from_int(-2)]),
        };
        SuiteReport::new(
            "bihom-comm",
            vec![CheckReport::new("bihom_comm", vec![witness], 16)],
        )
    }

    #[test]
    fn text_report_is_deterministic_and_complete() {
        let a = render_text(&failing_suite());
        let b = render_text(&failing_suite());
        assert_eq!(a, b);
        assert!(a.contains("suite bihom-comm: FAIL"));
        assert!(a.contains("witness (0,1): residual [0, -2]"));
    }

    #[test]
    fn json_report_parses_and_carries_verdict() {
        let text = render_json(&failing_suite());
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["passed"], serde_json::json!(false));
        assert_eq!(value["checks"][0]["identity"], serde_json::json!("bihom_comm"));
        assert_eq!(value["checks"][0]["witnesses"][0]["indices"], serde_json::json!([0, 1]));
    }
}
