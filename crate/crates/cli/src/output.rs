//! Output documents: tables or key/value records, emitted as CSV (header
//! row plus `#`-prefixed metadata comments) or as a single JSON document.
//! Floats print in shortest round-trip form, so values survive a
//! parse/print cycle bit-exactly.

use serde_json::{json, Map, Value};
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(x) => x.to_string(),
            Cell::Num(x) => format_f64(*x),
            Cell::Text(s) => escape_csv(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(x) => json!(x),
            Cell::Num(x) => json!(x),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Null => Value::Null,
        }
    }
}

/// Shortest representation that parses back to the identical f64.
pub fn format_f64(x: f64) -> String {
    format!("{x}")
}

fn escape_csv(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug)]
pub struct Metadata {
    pub command: String,
    pub seed: Option<u64>,
}

impl Metadata {
    pub fn new(seed: Option<u64>) -> Self {
        let command: Vec<String> = std::env::args().skip(1).collect();
        Self { command: command.join(" "), seed }
    }

    fn timestamp() -> u64 {
        SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0)
    }

    fn json(&self) -> Value {
        json!({
            "tool": "yamabe",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "seed": self.seed,
            "generated_at_unix": Self::timestamp(),
        })
    }

    fn csv_comments(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# tool: yamabe {}\n", env!("CARGO_PKG_VERSION")));
        out.push_str(&format!("# command: {}\n", self.command));
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed: {seed}\n"));
        }
        out.push_str(&format!("# generated_at_unix: {}\n", Self::timestamp()));
        out
    }
}

/// A column-labelled table; the payload of every command.
#[derive(Clone, Debug)]
pub struct TableDoc {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: Metadata,
}

impl TableDoc {
    pub fn new(columns: Vec<&'static str>, metadata: Metadata) -> Self {
        Self { columns, rows: Vec::new(), metadata }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.metadata.csv_comments();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|row| {
                        let mut obj = Map::new();
                        for (name, cell) in self.columns.iter().zip(row) {
                            obj.insert((*name).to_string(), cell.json());
                        }
                        Value::Object(obj)
                    })
                    .collect();
                let doc = json!({
                    "metadata": self.metadata.json(),
                    "columns": self.columns,
                    "rows": rows,
                });
                let mut text =
                    serde_json::to_string_pretty(&doc).expect("document serializes");
                text.push('\n');
                text
            }
        }
    }
}

/// Writes the rendered document to stdout or to `--out PATH`.
pub fn emit(doc: &TableDoc, format: Format, out: Option<&std::path::Path>) -> std::io::Result<()> {
    let text = doc.render(format);
    match out {
        None => {
            std::io::stdout().write_all(text.as_bytes())
        }
        Some(path) => std::fs::write(path, text),
    }
}
