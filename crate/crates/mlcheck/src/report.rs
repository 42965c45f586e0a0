//! Text and JSON renderings of a run.

use std::fmt::Write as _;

use crate::runner::{RunReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn emit(report: &RunReport, format: Format) -> String {
    match format {
        Format::Text => text(report),
        Format::Json => json(report),
    }
}

pub fn json(report: &RunReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn text(report: &RunReport) -> String {
    let mut out = String::new();
    writeln!(out, "manifest {}", report.manifest_digest).unwrap();
    let width = report.properties.iter().map(|p| p.id.len()).max().unwrap_or(0);
    for p in &report.properties {
        let status = if !p.passed() {
            "FAIL"
        } else if p.vacuous() && p.mandatory {
            "VACUOUS"
        } else if p.vacuous() {
            "vacuous"
        } else {
            "ok"
        };
        writeln!(
            out,
            "{:width$}  {:7}  hits {:>4}/{:<4}  violations {:<3}  {}",
            p.id,
            status,
            p.hypothesis_hits,
            p.examined,
            p.violations.len(),
            p.anchor,
        )
        .unwrap();
        for v in &p.violations {
            writeln!(out, "{:width$}    {}: {}", "", v.lattice, v.witness).unwrap();
        }
    }
    let verdict = match report.verdict {
        Verdict::Pass => "pass".to_string(),
        Verdict::Violation => "violation".to_string(),
        Verdict::Vacuous => format!("vacuous ({})", report.vacuous_mandatory().join(", ")),
    };
    writeln!(out, "verdict: {verdict}").unwrap();
    out
}
