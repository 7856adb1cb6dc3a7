use serde_json::{json, Value};

use koszul_core::Report;

use super::Format;
use crate::doc::{serialize, Document};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    pub fn success(stdout: String) -> Output {
        Output { code: 0, stdout, stderr: String::new() }
    }

    pub fn error(code: i32, stderr: String) -> Output {
        Output { code, stdout: String::new(), stderr }
    }

    /// Documents are always written in canonical JSON.
    pub fn document(doc: &Document) -> Output {
        Output::success(serialize(doc))
    }

    /// A check result: text lines or a JSON object gaining `"ok"`. Exit 1 unless `ok`.
    pub fn report(format: Format, ok: bool, lines: Vec<String>, mut value: Value) -> Output {
        let stdout = match format {
            Format::Text => lines.into_iter().map(|l| l + "\n").collect(),
            Format::Json => {
                value["ok"] = Value::Bool(ok);
                let mut s = serde_json::to_string_pretty(&value).expect("plain JSON");
                s.push('\n');
                s
            }
        };
        Output { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() }
    }
}

pub fn failures_json(r: &Report) -> Value {
    r.failures.iter().map(|f| json!({ "law": f.law, "witness": f.witness })).collect()
}

pub fn failures_text(r: &Report) -> Vec<String> {
    r.failures.iter().map(|f| format!("  {}: {}", f.law, f.witness)).collect()
}
