//! Report plumbing: every run emits a manifest (tool version, subcommand,
//! parameter echo, input digests, timestamp) followed by the report, as
//! aligned text, line-delimited JSON records, or both.

use clap::ValueEnum;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
    Both,
}

pub struct Output {
    format: Format,
    text: Vec<String>,
    records: Vec<Value>,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output {
            format,
            text: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn text(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    pub fn record(&mut self, value: Value) {
        self.records.push(value);
    }

    /// Serialize a value into a record with a tag naming its kind.
    pub fn tagged<T: serde::Serialize>(&mut self, tag: &str, value: &T) {
        let mut v = serde_json::to_value(value).expect("report types serialize");
        if let Value::Object(map) = &mut v {
            map.insert("record".to_string(), Value::String(tag.to_string()));
        } else {
            v = json!({ "record": tag, "value": v });
        }
        self.records.push(v);
    }

    pub fn emit(&self) {
        match self.format {
            Format::Text => {
                for line in &self.text {
                    println!("{line}");
                }
            }
            Format::Records => {
                for rec in &self.records {
                    println!("{rec}");
                }
            }
            Format::Both => {
                for line in &self.text {
                    println!("{line}");
                }
                for rec in &self.records {
                    println!("{rec}");
                }
            }
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Build the manifest and push it onto both output channels.
pub fn manifest(out: &mut Output, subcommand: &str, params: Value, inputs: &[(String, String)]) {
    let timestamp = chrono::Utc::now().to_rfc3339();
    out.text(format!(
        "# sosgap {} | {subcommand} | {timestamp}",
        env!("CARGO_PKG_VERSION")
    ));
    out.text(format!("# params: {params}"));
    for (path, digest) in inputs {
        out.text(format!("# input: {path} sha256={digest}"));
    }
    out.record(json!({
        "record": "manifest",
        "tool": "sosgap",
        "version": env!("CARGO_PKG_VERSION"),
        "subcommand": subcommand,
        "params": params,
        "inputs": inputs
            .iter()
            .map(|(p, d)| json!({ "path": p, "sha256": d }))
            .collect::<Vec<_>>(),
        "timestamp": timestamp,
    }));
}

pub fn digest_file(path: &Path) -> std::io::Result<(String, String)> {
    let bytes = std::fs::read(path)?;
    Ok((path.display().to_string(), sha256_hex(&bytes)))
}
