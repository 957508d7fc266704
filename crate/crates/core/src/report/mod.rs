//! Diagnostic reports: one JSON document per run, with a plain-text rendering.

pub mod build;
pub mod input;
pub mod selftest;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::fmt::Write as _;

pub const SCHEMA: &str = "degen/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub outcome: Outcome,
    pub statement: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub schema: String,
    pub kind: String,
    pub summary: String,
    pub verdicts: Vec<Verdict>,
    pub evidence: BTreeMap<String, Value>,
    pub warnings: Vec<String>,
}

impl DiagnosticReport {
    pub fn new(kind: &str) -> Self {
        Self {
            schema: SCHEMA.into(),
            kind: kind.into(),
            summary: String::new(),
            verdicts: Vec::new(),
            evidence: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    pub fn verdict(&mut self, name: impl Into<String>, outcome: Outcome, statement: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.into(), outcome, statement: statement.into() });
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, statement: impl Into<String>) {
        self.verdict(name, if pass { Outcome::Pass } else { Outcome::Fail }, statement);
    }

    pub fn evidence(&mut self, key: &str, value: impl Serialize) {
        self.evidence.insert(key.into(), serde_json::to_value(value).expect("evidence serializes"));
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.outcome == Outcome::Fail)
    }

    /// 0 when every verdict passes or is informational, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "[{}] {}: {}", self.schema, self.kind, self.summary);
        if !self.verdicts.is_empty() {
            out.push_str("\nverdicts:\n");
            for v in &self.verdicts {
                let tag = match v.outcome {
                    Outcome::Pass => "PASS",
                    Outcome::Fail => "FAIL",
                    Outcome::Info => "INFO",
                };
                let _ = writeln!(out, "  {tag}  {}: {}", v.name, v.statement);
            }
        }
        if !self.evidence.is_empty() {
            out.push_str("\nevidence:\n");
            for (k, v) in &self.evidence {
                let _ = writeln!(out, "  {k}: {v}");
            }
        }
        if !self.warnings.is_empty() {
            out.push_str("\nwarnings:\n");
            for w in &self.warnings {
                let _ = writeln!(out, "  - {w}");
            }
        }
        out
    }
}
