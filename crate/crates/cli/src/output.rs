use std::fmt::Write as _;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

pub const SCHEMA_VERSION: u32 = 1;

pub struct Report {
    pub command: &'static str,
    pub body: Value,
    pub table: String,
}

impl Report {
    pub fn new(command: &'static str, body: impl Serialize, table: String) -> Result<Self, Failure> {
        let body = serde_json::to_value(body).map_err(|e| Failure::internal(format!("serializing report: {e}")))?;
        Ok(Report { command, body, table })
    }

    fn json(&self) -> Value {
        let mut v = json!({ "schema_version": SCHEMA_VERSION, "command": self.command });
        if let (Some(out), Some(body)) = (v.as_object_mut(), self.body.as_object()) {
            out.extend(body.clone());
        } else {
            v["result"] = self.body.clone();
        }
        v
    }
}

pub struct Failure {
    pub code: u8,
    pub kind: String,
    pub message: String,
    pub report: Option<Box<Report>>,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { code: 1, kind: "Usage".into(), message: message.into(), report: None }
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, kind: "Internal".into(), message: message.into(), report: None }
    }

    pub fn with_report(mut self, report: Report) -> Self {
        self.report = Some(Box::new(report));
        self
    }
}

impl From<ramdiv::Error> for Failure {
    fn from(e: ramdiv::Error) -> Self {
        let code = if e.is_internal() {
            3
        } else if e.is_model_rejection() {
            2
        } else {
            1
        };
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        Failure { code, kind, message: e.to_string(), report: None }
    }
}

pub fn emit(format: Format, outcome: Result<Report, Failure>) -> ExitCode {
    match outcome {
        Ok(r) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&r.json()).expect("JSON values serialize")),
                Format::Table => print!("{}", r.table),
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let error = json!({ "kind": f.kind, "message": f.message, "exit_code": f.code });
            match (format, &f.report) {
                (Format::Json, Some(r)) => {
                    let mut v = r.json();
                    v["error"] = error;
                    println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
                }
                (Format::Json, None) => {
                    let v = json!({ "schema_version": SCHEMA_VERSION, "error": error });
                    println!("{}", serde_json::to_string_pretty(&v).expect("JSON values serialize"));
                }
                (Format::Table, Some(r)) => print!("{}", r.table),
                (Format::Table, None) => {}
            }
            eprintln!("error ({}): {}", f.kind, f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[String]| {
        let mut s = String::new();
        for (cell, w) in cells.iter().zip(&widths) {
            let _ = write!(s, "{cell}{}  ", " ".repeat(w - cell.chars().count()));
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    line(&mut out, &header.iter().map(|h| h.to_string()).collect::<Vec<_>>());
    for row in rows {
        line(&mut out, row);
    }
    out
}
