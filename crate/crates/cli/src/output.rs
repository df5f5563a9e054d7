use std::fs;
use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{json, Value};

use crate::Common;

/// Version of the JSON report envelope.
pub const REPORT_SCHEMA: u64 = 1;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

/// Why a command produced no regular report.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unknown ids, unreadable catalog.
    Usage(String),
    /// A computation failed (for example a search budget ran out).
    Check(String),
}

impl From<m3decomp::Error> for Failure {
    fn from(e: m3decomp::Error) -> Self {
        use m3decomp::Error as E;
        match e {
            E::UnknownId(_) | E::Parse { .. } | E::Schema(_) | E::Io(_) | E::NotSupported(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Check(other.to_string()),
        }
    }
}

pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    pub results: Value,
    pub failures: Vec<String>,
    pub table: Table,
    /// Replaces the JSON envelope when set (export writes a loadable catalog).
    pub document: Option<String>,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn error(msg: &str) -> Outcome {
        Outcome {
            command: "error",
            config: Value::Null,
            results: Value::Null,
            failures: vec![msg.to_string()],
            table: Table::new(&["error"]).row(vec![msg.to_string()]),
            document: None,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "schema_version": REPORT_SCHEMA,
            "command": self.command,
            "config": self.config,
            "passed": self.passed(),
            "failures": self.failures,
            "results": self.results,
        })
    }
}

/// Plain left-aligned text table.
#[derive(Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Table {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(mut self, cells: Vec<String>) -> Table {
        self.push(cells);
        self
    }

    pub fn push(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self) -> String {
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let parts: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            parts.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.header);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r));
            out.push('\n');
        }
        out
    }
}

pub fn emit(outcome: &Outcome, common: &Common) -> io::Result<()> {
    let text = match common.format {
        Format::Json if outcome.document.is_some() => outcome.document.clone().unwrap_or_default(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&outcome.to_json()).expect("serializable");
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = outcome.table.render();
            for f in &outcome.failures {
                s.push_str(&format!("FAIL {f}\n"));
            }
            s.push_str(if outcome.passed() {
                "PASS\n"
            } else {
                "FAILED\n"
            });
            s
        }
    };
    match &common.output {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
