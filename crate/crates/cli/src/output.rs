use serde_json::{Map, Value};

use crate::args::Format;
use crate::commands::Output;
use crate::{RunManifest, SCHEMA_VERSION};

pub(crate) fn render(format: Format, manifest: &RunManifest, status: &str, error: Option<&str>, out: &Output) -> String {
    match format {
        Format::Json => json_document(manifest, status, error, out),
        Format::Csv => csv_document(manifest, status, error, out),
    }
}

fn json_document(manifest: &RunManifest, status: &str, error: Option<&str>, out: &Output) -> String {
    let mut doc = Map::new();
    doc.insert("schema_version".into(), SCHEMA_VERSION.into());
    doc.insert("manifest".into(), serde_json::to_value(manifest).expect("manifest serialises"));
    doc.insert("status".into(), status.into());
    doc.insert("records".into(), Value::Array(out.records.iter().cloned().map(Value::Object).collect()));
    if let Some(s) = &out.summary {
        doc.insert("summary".into(), Value::Object(s.clone()));
    }
    if let Some(e) = error {
        doc.insert("error".into(), e.into());
    }
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("document serialises");
    s.push('\n');
    s
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_f64() => format!("{:.16e}", n.as_f64().unwrap_or(f64::NAN)),
        Value::Number(n) => n.to_string(),
        Value::Bool(b) => b.to_string(),
        other => other.to_string(),
    }
}

fn csv_document(manifest: &RunManifest, status: &str, error: Option<&str>, out: &Output) -> String {
    let mut text = String::new();
    let m = serde_json::to_string(manifest).expect("manifest serialises");
    text.push_str(&format!("# schema_version: {SCHEMA_VERSION}\n# manifest: {m}\n# status: {status}\n"));
    if let Some(s) = &out.summary {
        text.push_str(&format!("# summary: {}\n", Value::Object(s.clone())));
    }
    if let Some(e) = error {
        text.push_str(&format!("# error: {e}\n"));
    }
    let mut header: Vec<&String> = Vec::new();
    for r in &out.records {
        for k in r.keys() {
            if !header.contains(&k) {
                header.push(k);
            }
        }
    }
    if header.is_empty() {
        return text;
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).expect("in-memory write");
    for r in &out.records {
        let row: Vec<String> = header.iter().map(|k| r.get(*k).map(cell).unwrap_or_default()).collect();
        w.write_record(&row).expect("in-memory write");
    }
    text.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf-8"));
    text
}
