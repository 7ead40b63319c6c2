//! Command reports: an input echo, a numeric payload and pass/fail verdicts.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// `pass` is always `value <= limit`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub value: f64,
    pub limit: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit,
            pass: value <= limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub operation: String,
    pub inputs: Value,
    pub payload: Value,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub passed: bool,
}

impl Report {
    pub fn new(operation: &str, inputs: Value, payload: Value, verdicts: Vec<Verdict>) -> Self {
        let passed = verdicts.iter().all(|v| v.pass);
        Self {
            operation: operation.to_string(),
            inputs,
            payload,
            verdicts,
            notes: Vec::new(),
            passed,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable rendering: inputs, payload, then one line per verdict.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "operation: {}", self.operation);
        render_value(&mut out, "inputs", &self.inputs, 0);
        render_value(&mut out, "result", &self.payload, 0);
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        for v in &self.verdicts {
            let _ = writeln!(
                out,
                "[{}] {}: {:e} <= {:e}",
                if v.pass { "PASS" } else { "FAIL" },
                v.name,
                v.value,
                v.limit
            );
        }
        let _ = writeln!(out, "overall: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }
}

fn is_scalar_list(items: &[Value]) -> bool {
    items.iter().all(|v| !(v.is_array() || v.is_object()))
}

fn render_value(out: &mut String, key: &str, value: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (k, v) in map {
                render_value(out, k, v, depth + 1);
            }
        }
        Value::Array(items) if is_scalar_list(items) => {
            let items: Vec<String> = items.iter().map(Value::to_string).collect();
            let _ = writeln!(out, "{pad}{key}: [{}]", items.join(", "));
        }
        Value::Array(items) => {
            let _ = writeln!(out, "{pad}{key}:");
            for (i, v) in items.iter().enumerate() {
                render_value(out, &format!("[{i}]"), v, depth + 1);
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{key}: {other}");
        }
    }
}
