//! Text and JSON rendering of command results.

use contact_lie::{Error, ErrorClass, Scalar};
use serde_json::{json, Map, Value};

/// Schema version of the JSON document.
pub const SCHEMA: u64 = 1;

/// A command result: the verdict decides the exit code, `fields` feed the JSON
/// document and `lines` the text output.
pub struct Report {
    pub verdict: bool,
    fields: Map<String, Value>,
    lines: Vec<String>,
}

impl Report {
    pub fn new(verdict: bool) -> Self {
        Report { verdict, fields: Map::new(), lines: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.fields.insert(key.to_string(), value.into());
        self
    }

    pub fn line(&mut self, text: impl Into<String>) -> &mut Self {
        self.lines.push(text.into());
        self
    }

    pub fn text(&self) -> String {
        self.lines.join("\n")
    }

    pub fn json(&self, command: &str, code: u8) -> Value {
        json!({
            "schema": SCHEMA,
            "command": command,
            "exit_code": code,
            "result": Value::Object(self.fields.clone()),
        })
    }
}

pub fn error_json(command: &str, code: u8, e: &Error) -> Value {
    let class = match e.class() {
        ErrorClass::Verdict => "verdict",
        ErrorClass::Input => "input",
        ErrorClass::Internal => "internal",
    };
    json!({
        "schema": SCHEMA,
        "command": command,
        "exit_code": code,
        "error": {"kind": e.kind(), "class": class, "message": e.to_string()},
    })
}

/// Exact scalar in file notation (`"p/q"` or `"p/q,r/s"`).
pub fn scalar(s: &Scalar) -> Value {
    serde_json::to_value(s).expect("scalars serialize")
}

pub fn vector(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar).collect())
}

pub fn vector_text(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("({})", parts.join(", "))
}

pub fn float_matrix(rows: &[Vec<f64>]) -> Value {
    json!(rows)
}
