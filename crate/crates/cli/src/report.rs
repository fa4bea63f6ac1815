//! The machine-readable report: one JSON document per run, stable field
//! order and sorted object keys, so identical inputs give byte-identical
//! output apart from the timing field.

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub subcommand: String,
    pub instance: String,
    pub instance_sha256: String,
    pub params: Value,
    pub results: Value,
    pub pass: bool,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(
        subcommand: &str,
        instance: &str,
        sha256: &str,
        params: Value,
        results: Value,
        pass: bool,
    ) -> Report {
        Report {
            schema: 1,
            subcommand: subcommand.to_string(),
            instance: instance.to_string(),
            instance_sha256: sha256.to_string(),
            params,
            results,
            pass,
            timing_ms: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Short human summary: verdict first, then the result lines.
    pub fn human_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {}\n",
            self.subcommand,
            if self.pass { "pass" } else { "FAIL" }
        ));
        render(&self.results, 1, &mut out);
        out
    }
}

fn render(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (key, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{key}:\n"));
                        render(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{key}: {}\n", plain(v))),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", plain(v))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", plain(value))),
    }
}

fn plain(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
