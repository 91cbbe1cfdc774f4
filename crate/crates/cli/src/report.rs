//! Rendering of command results in the three output formats.
//!
//! A report is an ordered list of named fields. Text output prints one field
//! per line, JSON-lines output prints the same fields as one object, and CSV
//! prints a fixed per-command header followed by one row.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Bool(bool),
    Count(u64),
    Real(f64),
    Text(String),
    /// Vertex mapping; text output prints one `i -> pi(i)` line per vertex.
    Mapping(Vec<usize>),
    /// Serialized graph, one line per entry.
    Graph(Vec<String>),
    /// Free-form lines, e.g. offending pairs in a self-check.
    Lines(Vec<String>),
}

impl Field {
    fn json(&self) -> Value {
        match self {
            Field::Bool(b) => json!(b),
            Field::Count(c) => json!(c),
            Field::Real(x) if x.is_finite() => json!(x),
            Field::Real(x) => json!(x.to_string()),
            Field::Text(s) => json!(s),
            Field::Mapping(m) => json!(m),
            Field::Graph(lines) | Field::Lines(lines) => json!(lines),
        }
    }

    /// Single-cell form used in CSV rows.
    fn cell(&self) -> String {
        match self {
            Field::Bool(b) => b.to_string(),
            Field::Count(c) => c.to_string(),
            Field::Real(x) => x.to_string(),
            Field::Text(s) => s.clone(),
            Field::Mapping(m) => m.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            Field::Graph(lines) | Field::Lines(lines) => lines.join(";"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    fields: Vec<(&'static str, Field)>,
    /// `(csv header, field name)` pairs; empty means every field in order.
    csv_columns: Vec<(&'static str, &'static str)>,
    /// Dense numeric table rendered in place of the fields (embed).
    table: Option<Table>,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<f64>>,
    pub vertex_columns: usize,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, name: &'static str, value: Field) -> Self {
        self.fields.push((name, value));
        self
    }

    pub fn csv(mut self, columns: &[(&'static str, &'static str)]) -> Self {
        self.csv_columns = columns.to_vec();
        self
    }

    pub fn table(table: Table) -> Self {
        Self {
            table: Some(table),
            ..Self::default()
        }
    }

    fn get(&self, name: &str) -> Option<&Field> {
        self.fields.iter().find(|(k, _)| *k == name).map(|(_, v)| v)
    }

    pub fn render(&self, format: Format) -> String {
        if let Some(t) = &self.table {
            return render_table(t, format);
        }
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let obj: Map<String, Value> = self.fields.iter().map(|(k, v)| (k.to_string(), v.json())).collect();
                format!("{}\n", Value::Object(obj))
            }
            Format::Csv => {
                let columns: Vec<(&str, &str)> = if self.csv_columns.is_empty() {
                    self.fields.iter().map(|(k, _)| (*k, *k)).collect()
                } else {
                    self.csv_columns.clone()
                };
                let header: Vec<&str> = columns.iter().map(|(h, _)| *h).collect();
                let row: Vec<String> = columns
                    .iter()
                    .map(|(_, name)| self.get(name).map(Field::cell).unwrap_or_default())
                    .map(|c| csv_escape(&c))
                    .collect();
                format!("{}\n{}\n", header.join(","), row.join(","))
            }
        }
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        for (name, value) in &self.fields {
            match value {
                Field::Mapping(m) => {
                    let _ = writeln!(out, "{name}:");
                    for (i, j) in m.iter().enumerate() {
                        let _ = writeln!(out, "{i} -> {j}");
                    }
                }
                Field::Graph(lines) | Field::Lines(lines) => {
                    let _ = writeln!(out, "{name}:");
                    for line in lines {
                        let _ = writeln!(out, "{line}");
                    }
                }
                other => {
                    let _ = writeln!(out, "{name}: {}", other.cell());
                }
            }
        }
        out
    }
}

fn csv_escape(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn render_table(t: &Table, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({
                "d": t.rows,
                "k": t.cols,
                "vertex_columns": t.vertex_columns,
                "points": t.data,
            });
            format!("{v}\n")
        }
        Format::Text | Format::Csv => {
            let mut out = format!("{},{}\n", t.rows, t.cols);
            for row in &t.data {
                let cells: Vec<String> = row.iter().map(f64::to_string).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
            out
        }
    }
}
