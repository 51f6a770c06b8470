use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use super::{Command, Format, Payload, EXIT_OK};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: Command,
    pub input_echo: Payload,
    pub result: Value,
    pub citations: Vec<String>,
    pub witnesses: Map<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub schema_version: &'static str,
    pub command: Option<Command>,
    pub error: ErrorBody,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorBody {
    pub code: i32,
    pub message: String,
}

/// What `run` produced: a report, an error, or both (tolerance failures keep the report).
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Option<Report>,
    pub error: Option<ErrorReport>,
}

impl Outcome {
    pub(crate) fn ok(report: Report) -> Outcome {
        Outcome {
            exit_code: EXIT_OK,
            report: Some(report),
            error: None,
        }
    }

    pub(crate) fn failed(
        code: i32,
        command: Option<Command>,
        message: String,
        report: Option<Report>,
    ) -> Outcome {
        Outcome {
            exit_code: code,
            report,
            error: Some(ErrorReport {
                schema_version: SCHEMA_VERSION,
                command,
                error: ErrorBody { code, message },
            }),
        }
    }

    pub fn to_json(&self) -> String {
        match (&self.report, &self.error) {
            (Some(r), None) => serde_json::to_string(r),
            (None, Some(e)) => serde_json::to_string(e),
            (Some(r), Some(e)) => {
                let mut v = serde_json::to_value(r).expect("report serializes");
                v["error"] = serde_json::to_value(&e.error).expect("error serializes");
                serde_json::to_string(&v)
            }
            (None, None) => unreachable!("outcome without report or error"),
        }
        .expect("reports serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        let v: Value = serde_json::from_str(&self.to_json()).expect("round trip");
        serde_json::to_string_pretty(&v).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(r) = &self.report {
            let _ = writeln!(out, "command: {}", r.command.name());
            render_object(&mut out, &r.result, 0);
            if !r.citations.is_empty() {
                let _ = writeln!(out, "citations:");
                for c in &r.citations {
                    let _ = writeln!(out, "  - {c}");
                }
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error (exit {}): {}", e.error.code, e.error.message);
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json_pretty(),
            Format::Text => self.to_text(),
        }
    }

    /// Obstructed / passed / unknown for batch tallies; `None` for errors.
    pub fn category(&self) -> Option<Category> {
        if self.exit_code != EXIT_OK {
            return None;
        }
        let result = &self.report.as_ref()?.result;
        let category = match result.get("summary").and_then(Value::as_str) {
            Some("NotStronglyFillable") => Category::Obstructed,
            Some("SteinFillable") => Category::Passed,
            Some(_) => Category::Unknown,
            None => match result.get("pass").and_then(Value::as_bool) {
                Some(false) => Category::Unknown,
                _ => Category::Passed,
            },
        };
        Some(category)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Obstructed,
    Passed,
    Unknown,
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items)
            if items
                .iter()
                .all(|x| matches!(x, Value::Number(_) | Value::String(_))) =>
        {
            Some(format!(
                "[{}]",
                items
                    .iter()
                    .map(|x| scalar(x).unwrap_or_default())
                    .collect::<Vec<_>>()
                    .join(", ")
            ))
        }
        _ => None,
    }
}

fn render_object(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    let Value::Object(map) = v else {
        let _ = writeln!(out, "{pad}{}", scalar(v).unwrap_or_else(|| v.to_string()));
        return;
    };
    for (k, x) in map {
        if let Some(s) = scalar(x) {
            let _ = writeln!(out, "{pad}{k}: {s}");
        } else if k == "criteria" {
            let _ = writeln!(out, "{pad}criteria:");
            for c in x.as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "{pad}  [{}] {} ({})",
                    c["status"].as_str().unwrap_or("?"),
                    c["name"].as_str().unwrap_or("?"),
                    c["citation"].as_str().unwrap_or("")
                );
                if let Some(d) = c.get("detail").and_then(Value::as_str) {
                    let _ = writeln!(out, "{pad}      {d}");
                }
            }
        } else if let Some(g) = x.get("display").and_then(Value::as_str) {
            let _ = writeln!(out, "{pad}{k}: {g}");
        } else if x.is_object() {
            let _ = writeln!(out, "{pad}{k}:");
            render_object(out, x, indent + 1);
        } else {
            let _ = writeln!(out, "{pad}{k}: {x}");
        }
    }
}
