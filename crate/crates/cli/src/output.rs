//! CSV and JSON emission.
//!
//! CSV floats use '.' decimals and exactly 12 significant digits in
//! scientific notation, so identical runs produce byte-identical files.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Format;
use crate::CliError;

/// 12 significant digits, deterministic.
pub fn fmt_float(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000e0".into();
    }
    format!("{v:.11e}")
}

pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(v) => v.clone(),
        }
    }
}

/// Tabular payload: CSV rows or a JSON array of objects mirroring the
/// columns.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(Cell::csv).collect();
                    out.push_str(&line.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let objects: Vec<serde_json::Map<String, serde_json::Value>> = self
                    .rows
                    .iter()
                    .map(|row| {
                        self.columns
                            .iter()
                            .zip(row)
                            .map(|(&c, cell)| {
                                let value = match cell {
                                    Cell::Int(v) => serde_json::json!(v),
                                    Cell::Float(v) => serde_json::json!(v),
                                    Cell::Bool(v) => serde_json::json!(v),
                                    Cell::Text(v) => serde_json::json!(v),
                                };
                                (c.to_string(), value)
                            })
                            .collect()
                    })
                    .collect();
                let mut text = serde_json::to_string_pretty(&objects).expect("serializable");
                text.push('\n');
                text
            }
        }
    }
}

/// Write to the output path, or stdout when none is given.
pub fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            CliError::Usage(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Usage(format!("cannot write to stdout: {e}")))
        }
    }
}

pub fn emit_json<T: Serialize>(value: &T, output: Option<&PathBuf>) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Numerical(format!("serialization failed: {e}")))?;
    text.push('\n');
    emit(&text, output)
}

pub fn read_matrix(path: &Path) -> Result<lswh::ComplexMatrix, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("invalid matrix JSON in {}: {e}", path.display())))
}
