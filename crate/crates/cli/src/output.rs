//! CSV and JSON emission. Floats in CSV carry 17 significant digits.

use std::fmt::Write as _;

use anyhow::Result;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match crate::config::choose("format", s, &["csv", "json"])? {
            "csv" => Self::Csv,
            _ => Self::Json,
        })
    }
}

/// Scientific notation with 16 digits after the point: round-trips any f64.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// A table of floats with a fixed header.
pub struct Table<'a> {
    pub header: &'a [&'a str],
    pub rows: Vec<Vec<f64>>,
}

#[derive(Serialize)]
struct JsonTable<'a> {
    columns: &'a [&'a str],
    rows: &'a [Vec<f64>],
}

impl Table<'_> {
    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => {
                let mut out = self.header.join(",");
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|v| float(*v)).collect();
                    writeln!(out, "{}", cells.join(","))?;
                }
                Ok(out)
            }
            Format::Json => {
                let mut out = serde_json::to_string_pretty(&JsonTable {
                    columns: self.header,
                    rows: &self.rows,
                })?;
                out.push('\n');
                Ok(out)
            }
        }
    }
}
