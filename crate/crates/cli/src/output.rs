//! Tabular reports rendered as CSV or JSON with identical numeric text.

use std::io::{self, Write};

use abundancy::num::fmt15;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Integer already in decimal form.
    Int(String),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    pub fn int(v: impl ToString) -> Self {
        Cell::Int(v.to_string())
    }

    pub fn text(v: impl Into<String>) -> Self {
        Cell::Text(v.into())
    }

    fn csv_text(&self) -> String {
        match self {
            Cell::Int(s) | Cell::Text(s) => s.clone(),
            Cell::Float(v) => fmt15(*v),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json_text(&self) -> String {
        match self {
            Cell::Int(s) => s.clone(),
            Cell::Float(v) if v.is_finite() => fmt15(*v),
            Cell::Float(v) => json_string(&fmt15(*v)),
            Cell::Text(s) => json_string(s),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => "null".into(),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::text(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, columns: &[&'static str]) -> Self {
        Self { name, columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in table {}", self.name);
        self.rows.push(row);
    }
}

/// Builds a row from heterogeneous values.
#[macro_export]
macro_rules! row {
    ($($v:expr),* $(,)?) => { vec![$($crate::output::Cell::from($v)),*] };
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Report {
    pub tables: Vec<Table>,
}

impl Report {
    pub fn add(&mut self, table: Table) {
        self.tables.push(table);
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    /// CSV with one header per table; several tables are separated by
    /// `## name` lines.
    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        let multi = self.tables.len() > 1;
        for (i, t) in self.tables.iter().enumerate() {
            if multi {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "## {}", t.name)?;
            }
            let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
            w.write_record(&t.columns).map_err(io::Error::other)?;
            for r in &t.rows {
                w.write_record(r.iter().map(Cell::csv_text)).map_err(io::Error::other)?;
            }
            out.write_all(&w.into_inner().map_err(|e| io::Error::other(e.to_string()))?)?;
        }
        Ok(())
    }

    /// `{"table": [{"column": value, …}, …], …}` with tables in report order.
    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "{{")?;
        for (i, t) in self.tables.iter().enumerate() {
            write!(out, "  {}: [", json_string(t.name))?;
            for (j, r) in t.rows.iter().enumerate() {
                let fields: Vec<String> =
                    t.columns.iter().zip(r).map(|(c, v)| format!("{}: {}", json_string(c), v.json_text())).collect();
                write!(out, "{}\n    {{{}}}", if j == 0 { "" } else { "," }, fields.join(", "))?;
            }
            let close = if t.rows.is_empty() { "]" } else { "\n  ]" };
            writeln!(out, "{close}{}", if i + 1 < self.tables.len() { "," } else { "" })?;
        }
        writeln!(out, "}}")
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }
}
