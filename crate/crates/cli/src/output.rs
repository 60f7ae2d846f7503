//! Rendering of command results as JSON, CSV or plain text.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A command result: the JSON document, plus a table when the data is
/// naturally tabular.
pub struct Report {
    pub value: Value,
    pub table: Option<Table>,
}

pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Report {
    pub fn new(value: impl serde::Serialize) -> Report {
        Report { value: serde_json::to_value(value).expect("results serialize"), table: None }
    }

    pub fn with_table(mut self, table: Table) -> Report {
        self.table = Some(table);
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.value).expect("values serialize") + "\n",
            Format::Csv => match &self.table {
                Some(t) => t.csv(),
                None => flat_pairs(&self.value, "key,value\n", ","),
            },
            Format::Text => match &self.table {
                Some(t) => t.text(),
                None => flat_pairs(&self.value, "", ": "),
            },
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Top-level fields one per line; nested values stay as compact JSON.
fn flat_pairs(v: &Value, header: &str, sep: &str) -> String {
    let mut out = header.to_string();
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let _ = writeln!(out, "{k}{sep}{}", csv_field(&scalar(x), sep == ","));
            }
        }
        other => out.push_str(&format!("{}\n", scalar(other))),
    }
    out
}

fn csv_field(s: &str, quote: bool) -> String {
    if quote && (s.contains(',') || s.contains('"') || s.contains('\n')) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    fn csv(&self) -> String {
        let line = |cells: &[String]| cells.iter().map(|c| csv_field(c, true)).collect::<Vec<_>>().join(",") + "\n";
        std::iter::once(line(&self.header)).chain(self.rows.iter().map(|r| line(r))).collect()
    }

    fn text(&self) -> String {
        let widths: Vec<usize> = (0..self.header.len())
            .map(|i| self.rows.iter().map(|r| r[i].len()).chain([self.header[i].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
                + "\n"
        };
        std::iter::once(line(&self.header)).chain(self.rows.iter().map(|r| line(r))).collect()
    }
}
