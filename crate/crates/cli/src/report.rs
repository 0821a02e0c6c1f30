//! The verdict document printed by every command.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};
use vcm_core::virtual_cm::{Failure, Verdict};
use vcm_core::{Face, SimplicialComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    RefutedHypothesis,
    Unknown,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail | Status::RefutedHypothesis | Status::Unknown => 1,
            Status::Error => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::RefutedHypothesis => "refuted-hypothesis",
            Status::Unknown => "unknown",
            Status::Error => "error",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FailureDoc {
    pub condition: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub number: Option<u8>,
    /// 0-based position in the facet order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// The facet being attached at `step`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attaching: Option<String>,
    pub detail: String,
}

impl FailureDoc {
    pub fn new(condition: &str, witness: impl Into<String>, detail: impl Into<String>) -> Self {
        FailureDoc {
            condition: condition.to_string(),
            number: None,
            step: None,
            witness: Some(witness.into()),
            attaching: None,
            detail: detail.into(),
        }
    }

    /// `sequence` is the facet order the failure's step refers to.
    pub fn from_failure(f: &Failure, base: &SimplicialComplex, sequence: Option<&[Face]>) -> Self {
        let attaching = match (f.step, sequence) {
            (Some(s), Some(seq)) => seq.get(s).map(|g| base.format_face(*g)),
            _ => None,
        };
        FailureDoc {
            condition: f.condition.name().to_string(),
            number: f.condition.number(),
            step: f.step,
            witness: f.witness.clone().or_else(|| Some(f.condition.name().to_string())),
            attaching,
            detail: f.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<FailureDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<String>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub result: Map<String, Value>,
    /// Emitted certificate or ideal; also what `--out` writes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: Status::Pass,
            failure: None,
            hypothesis: None,
            result: Map::new(),
            document: None,
            error: None,
        }
    }

    pub fn error(command: &str, err: &anyhow::Error) -> Self {
        Report {
            status: Status::Error,
            error: Some(format!("{err:#}")),
            ..Report::new(command)
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("serializable result");
        self.result.insert(key.to_string(), v);
    }

    pub fn fail(&mut self, failure: FailureDoc) {
        self.status = Status::Fail;
        self.failure = Some(failure);
    }

    /// Records the first failing verdict, if any.
    pub fn verdict(&mut self, v: &Verdict, base: &SimplicialComplex, sequence: Option<&[Face]>) {
        if let (Verdict::Fail(f), None) = (v, &self.failure) {
            self.fail(FailureDoc::from_failure(f, base, sequence));
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable report")
    }

    /// Human-readable rendering.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.status.name());
        if let Some(e) = &self.error {
            let _ = writeln!(out, "  error: {e}");
        }
        if let Some(h) = &self.hypothesis {
            let _ = writeln!(out, "  refuted hypothesis: {h}");
        }
        if let Some(f) = &self.failure {
            let _ = write!(out, "  failed: {}", f.condition);
            if let Some(n) = f.number {
                let _ = write!(out, " (condition {n})");
            }
            if let Some(s) = f.step {
                let _ = write!(out, " at step {s}");
            }
            if let Some(a) = &f.attaching {
                let _ = write!(out, " attaching {a}");
            }
            let _ = writeln!(out);
            if let Some(w) = &f.witness {
                let _ = writeln!(out, "  witness: {w}");
            }
            let _ = writeln!(out, "  {}", f.detail);
        }
        if let Some(Value::Array(rows)) = self.result.get("rows") {
            out.push_str(&table(rows));
        }
        for (k, v) in self.result.iter().filter(|(k, _)| k.as_str() != "rows") {
            let _ = writeln!(out, "  {k}: {v}");
        }
        out
    }
}

fn cell(row: &Value, key: &str) -> String {
    match row.get(key) {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Bool(b)) => if *b { "ok" } else { "FAIL" }.to_string(),
        Some(v) => v.to_string(),
        None => String::new(),
    }
}

fn table(rows: &[Value]) -> String {
    let keys = ["name", "expected", "computed", "pass"];
    let cells: Vec<Vec<String>> = rows.iter().map(|r| keys.iter().map(|k| cell(r, k)).collect()).collect();
    let widths: Vec<usize> = (0..keys.len())
        .map(|i| cells.iter().map(|r| r[i].chars().count()).chain([keys[i].len()]).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    let line = |out: &mut String, items: &[String]| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        let _ = writeln!(out, "  {}", padded.join("  ").trim_end());
    };
    line(&mut out, &keys.map(String::from));
    for r in &cells {
        line(&mut out, r);
    }
    out
}
