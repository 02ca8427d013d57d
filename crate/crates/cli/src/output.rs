//! Tabular results with deterministic CSV/JSON emission.
//!
//! CSV is RFC-4180 style with '.' decimals and 17 significant digits, so
//! floats round-trip exactly and identical runs produce byte-identical
//! files. Undefined quantities (e.g. efficiency at zero coupling) emit an
//! empty cell in CSV and `null` in JSON.

use serde::Serialize;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Float(x)
    }
}

impl From<Option<f64>> for Value {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Value::Empty, Value::Float)
    }
}

impl From<i64> for Value {
    fn from(x: i64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as i64)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let mut first = true;
            for value in row {
                if !first {
                    write!(w, ",")?;
                }
                first = false;
                match value {
                    Value::Int(i) => write!(w, "{i}")?,
                    Value::Float(x) => write!(w, "{}", format_float(*x))?,
                    Value::Text(s) => write!(w, "{}", csv_escape(s))?,
                    Value::Empty => {}
                }
            }
            writeln!(w)?;
        }
        Ok(())
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        let rows: Vec<serde_json::Map<String, serde_json::Value>> = self
            .rows
            .iter()
            .map(|row| {
                self.columns
                    .iter()
                    .zip(row)
                    .map(|(name, value)| {
                        let v = match value {
                            Value::Int(i) => serde_json::json!(i),
                            Value::Float(x) => serde_json::json!(x),
                            Value::Text(s) => serde_json::json!(s),
                            Value::Empty => serde_json::Value::Null,
                        };
                        (name.clone(), v)
                    })
                    .collect()
            })
            .collect();
        serde_json::to_writer_pretty(&mut w, &rows)?;
        writeln!(w)
    }

    /// Write to the given path (format chosen by the caller) or stdout.
    pub fn emit(&self, path: Option<&Path>, format: Format) -> io::Result<()> {
        match path {
            Some(p) => {
                let file = BufWriter::new(File::create(p)?);
                match format {
                    Format::Csv => self.write_csv(file),
                    Format::Json => self.write_json(file),
                }
            }
            None => {
                let stdout = io::stdout();
                let lock = stdout.lock();
                match format {
                    Format::Csv => self.write_csv(lock),
                    Format::Json => self.write_json(lock),
                }
            }
        }
    }
}

/// 17 significant digits; NaN/inf become text CSV can carry.
fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Run metadata written next to every file an invocation produces.
#[derive(Debug, Serialize)]
pub struct Manifest {
    pub command: String,
    pub parameters: serde_json::Value,
    pub version: String,
    pub runtime_seconds: f64,
    pub rows: usize,
}

impl Manifest {
    pub fn new(command: &str, parameters: serde_json::Value, runtime_seconds: f64, rows: usize) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            version: env!("CARGO_PKG_VERSION").to_string(),
            runtime_seconds,
            rows,
        }
    }

    /// Write `<output>.manifest.json` next to the data file.
    pub fn write_for(&self, output: &Path) -> io::Result<()> {
        let mut path = output.as_os_str().to_owned();
        path.push(".manifest.json");
        let file = BufWriter::new(File::create(Path::new(&path))?);
        serde_json::to_writer_pretty(file, self)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout_and_precision() {
        let mut t = Table::new(vec!["n", "value", "eta", "note"]);
        t.push(vec![
            3usize.into(),
            (1.0 / 3.0).into(),
            Value::Empty,
            "ok, fine".into(),
        ]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "n,value,eta,note\n3,3.3333333333333331e-1,,\"ok, fine\"\n"
        );
        // Round trip: 17 significant digits recover the exact double.
        let parsed: f64 = "3.3333333333333331e-1".parse().unwrap();
        assert_eq!(parsed, 1.0 / 3.0);
    }

    #[test]
    fn json_nulls_for_empty() {
        let mut t = Table::new(vec!["eta"]);
        t.push(vec![Value::Empty]);
        let mut buf = Vec::new();
        t.write_json(&mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert!(v[0]["eta"].is_null());
    }
}
