use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{CliError, Exit};

/// What a command prints. Deterministic for a given input and seed unless
/// timing was requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    /// `ok`, `failed` or `error`
    pub status: String,
    pub outputs: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit: Exit,
    pub report: RunReport,
}

impl Outcome {
    pub fn new(command: &str, digest: String, seed: u64, result: Result<(bool, Value), CliError>) -> Self {
        let (exit, status, outputs) = match result {
            Ok((true, v)) => (Exit::Ok, "ok", v),
            Ok((false, v)) => (Exit::Failed, "failed", v),
            Err(e) => (e.exit(), "error", serde_json::json!({ "error": e.to_string() })),
        };
        Outcome {
            exit,
            report: RunReport {
                command: command.into(),
                input_digest: digest,
                seed,
                status: status.into(),
                outputs,
                timing_ms: None,
            },
        }
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Plain text: header lines, then the outputs flattened to `key: value`
    /// lines, with matrices as fraction grids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "status: {}", self.status).unwrap();
        writeln!(out, "seed: {}", self.seed).unwrap();
        writeln!(out, "input: {}", self.input_digest).unwrap();
        if let Some(t) = self.timing_ms {
            writeln!(out, "time: {t} ms").unwrap();
        }
        flatten(&mut out, "", &self.outputs);
        out
    }
}

fn as_grid(v: &Value) -> Option<Vec<Vec<&str>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| r.as_array()?.iter().map(Value::as_str).collect::<Option<Vec<_>>>())
        .collect()
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(out, &key, x);
            }
        }
        Value::Array(items) => {
            if let Some(grid) = as_grid(v) {
                let width = grid.iter().flatten().map(|s| s.len()).max().unwrap_or(1);
                writeln!(out, "{prefix}:").unwrap();
                for row in grid {
                    let cells: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
                    writeln!(out, "  {}", cells.join(" ")).unwrap();
                }
            } else if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                let cells: Vec<String> = items.iter().map(scalar).collect();
                writeln!(out, "{prefix}: [{}]", cells.join(", ")).unwrap();
            } else {
                for (i, x) in items.iter().enumerate() {
                    flatten(out, &format!("{prefix}[{i}]"), x);
                }
            }
        }
        _ => writeln!(out, "{prefix}: {}", scalar(v)).unwrap(),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
