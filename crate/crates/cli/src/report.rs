use serde_json::{json, Value};

use crate::Format;

pub const SCHEMA_VERSION: u32 = 1;

/// What a command produces, before rendering. CSV output is the header and
/// rows only; the table adds the summary lines; JSON carries `data`.
pub struct Report {
    pub kind: &'static str,
    pub summary: Vec<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub data: Value,
}

impl Report {
    pub fn new(kind: &'static str, headers: &[&str], data: Value) -> Self {
        Report {
            kind,
            summary: Vec::new(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            data,
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.headers.join(",");
                out.push('\n');
                for r in &self.rows {
                    out.push_str(&r.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let doc = json!({
                    "schema_version": SCHEMA_VERSION,
                    "kind": self.kind,
                    "data": self.data,
                });
                let mut out = serde_json::to_string_pretty(&doc).unwrap();
                out.push('\n');
                out
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut out = String::new();
        for line in &self.summary {
            out.push_str(line);
            out.push('\n');
        }
        if self.rows.is_empty() {
            return out;
        }
        if !self.summary.is_empty() {
            out.push('\n');
        }
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.len()).collect();
        for r in &self.rows {
            for (w, c) in widths.iter_mut().zip(r) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| if c.parse::<i64>().is_ok() { format!("{c:>w$}") } else { format!("{c:<w$}") })
                .collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out.push_str(&line(&self.headers));
        for r in &self.rows {
            out.push_str(&line(r));
        }
        out
    }
}
