//! Report envelopes, certificate files and text rendering.

use std::path::Path;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::jobs::{JobOutcome, Settings};

pub const TOOL: &str = "aqcalc";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// A certificate body and the file name derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateFile {
    pub name: String,
    pub content: String,
}

pub fn certificate_file(value: &Value) -> CertificateFile {
    let content = format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values always print"));
    let name = format!("{}.json", hex::encode(Sha256::digest(content.as_bytes())));
    CertificateFile { name, content }
}

pub fn caps_value(s: &Settings) -> Value {
    json!({
        "homological": s.homological,
        "internal": s.internal,
        "window": s.window.map(|(a, b)| vec![a, b]),
        "iterations": s.iterations,
    })
}

/// The envelope of one job plus the certificate files it references.
pub fn envelope(o: &JobOutcome) -> (Value, Vec<CertificateFile>) {
    let mut files = Vec::new();
    let mut refs = Map::new();
    for (label, v) in &o.certificates {
        let f = certificate_file(v);
        refs.insert(label.clone(), Value::String(f.name.clone()));
        files.push(f);
    }
    let v = json!({
        "tool": TOOL,
        "version": VERSION,
        "job": {
            "command": o.command,
            "targets": o.targets,
            "violations": o.violations,
            "unsettled": o.unsettled,
        },
        "caps": caps_value(&o.settings),
        "result": o.result,
        "certificates": refs,
    });
    (v, files)
}

/// Serializes a value; object keys come out sorted, so equal values give equal bytes.
pub fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values always print")),
        Format::Text => {
            let mut out = String::new();
            text(v, "", &mut out);
            out
        }
    }
}

fn flat(v: &Value) -> bool {
    !v.is_array() && !v.is_object()
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        // Short lists and lists of rows stay on one line.
        Value::Array(a) if a.iter().all(|x| flat(x) || x.as_array().is_some_and(|r| r.iter().all(flat))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn text(v: &Value, path: &str, out: &mut String) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{path}: {s}\n"));
        return;
    }
    let key = |k: &str| if path.is_empty() { k.to_string() } else { format!("{path}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| text(x, &key(k), out)),
        Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| text(x, &key(&i.to_string()), out)),
        _ => unreachable!("scalars handled above"),
    }
}

/// Writes certificate files into `dir`, skipping ones already present.
pub fn write_certificates(dir: &Path, files: &[CertificateFile]) -> std::io::Result<()> {
    for f in files {
        let path = dir.join(&f.name);
        if !path.exists() {
            std::fs::write(path, &f.content)?;
        }
    }
    Ok(())
}
