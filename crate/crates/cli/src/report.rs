use std::fmt::Write as _;

use cyclic_gv::{DistanceThreshold, VERSION};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// An ordered JSON object that starts with the fields every run reports.
pub struct Report(Map<String, Value>);

impl Report {
    pub fn new(command: &str, n: usize, delta: DistanceThreshold, seed: Option<u64>) -> Self {
        let mut r = Report(Map::new());
        r.set("command", command);
        r.set("version", VERSION);
        r.set("n", n);
        r.set("delta", delta.to_string());
        r.set("seed", seed);
        r.set("generator", cyclic_gv::rng::GENERATOR);
        r
    }

    pub fn set(&mut self, key: &str, value: impl serde::Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.0.insert(key.to_owned(), v);
    }

    /// Copies every field of a serializable struct, keeping existing keys.
    pub fn merge(&mut self, value: impl serde::Serialize) {
        if let Value::Object(m) = serde_json::to_value(value).expect("report values serialize") {
            for (k, v) in m {
                self.0.entry(k).or_insert(v);
            }
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.0).expect("valid json");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = String::new();
                for (k, v) in &self.0 {
                    flatten(&mut out, k, v);
                }
                out
            }
        }
    }
}

fn flatten(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(out, &format!("{key}.{k}"), x);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(out, &format!("{key}[{i}]"), x);
            }
        }
        Value::String(s) => writeln!(out, "{key}: {s}").unwrap(),
        Value::Null => writeln!(out, "{key}: -").unwrap(),
        other => writeln!(out, "{key}: {other}").unwrap(),
    }
}
