//! Deterministic tabular output.
//!
//! CSV: `#`-prefixed provenance lines, one line of column names, then rows
//! with reals in `{:.16e}` (17 significant digits). JSON: an array of
//! objects keyed by column name, in column order.

use std::fmt::Write as _;
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputTable {
    pub provenance: Vec<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

fn real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

impl OutputTable {
    pub fn new(provenance: Vec<String>, columns: &[&str]) -> Self {
        OutputTable { provenance, columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for p in &self.provenance {
            writeln!(out, "# {p}").unwrap();
        }
        writeln!(out, "{}", self.columns.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match *c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Real(x) => real(x),
                })
                .collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    /// Rows only; non-finite reals become `null`.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, c) in self.columns.iter().zip(row) {
                    let v = match *c {
                        Cell::Int(i) => Value::from(i),
                        Cell::Real(x) => Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null),
                    };
                    obj.insert(name.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("JSON of plain numbers");
        s.push('\n');
        s
    }

    /// Writes CSV, or JSON when the path ends in `.json`; stdout without a path.
    pub fn write(&self, path: Option<&Path>) -> Result<(), CliError> {
        match path {
            None => {
                print!("{}", self.to_csv());
                Ok(())
            }
            Some(p) => {
                let text = if p.extension().is_some_and(|e| e == "json") { self.to_json() } else { self.to_csv() };
                write_file(p, &text)
            }
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}
