//! Output records and their CSV/JSON renderings.
//!
//! Floats are written in shortest round-trip form, so re-parsing either
//! format gives back the exact `f64`.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::args::Format;
use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

pub type Row = Map<String, Value>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Map<String, Value>,
    pub results: Vec<Row>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters: Map::new(),
            results: Vec::new(),
            details: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }
}

/// Builds a row from `(column, value)` pairs, keeping their order.
pub fn row<I, V>(pairs: I) -> Row
where
    I: IntoIterator<Item = (&'static str, V)>,
    V: Into<Value>,
{
    pairs
        .into_iter()
        .map(|(k, v)| (k.to_string(), v.into()))
        .collect()
}

/// `f64` as JSON; non-finite values become `null`.
pub fn num(v: f64) -> Value {
    serde_json::Number::from_f64(v).map_or(Value::Null, Value::Number)
}

pub fn opt(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// CSV with one header row; every result row must have the same columns.
pub fn write_csv<W: Write>(record: &OutputRecord, w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    if let Some(first) = record.results.first() {
        out.write_record(first.keys())?;
        for r in &record.results {
            if r.len() != first.len() || !r.keys().zip(first.keys()).all(|(a, b)| a == b) {
                return Err(CliError::Usage("result rows have differing columns".into()));
            }
            out.write_record(r.values().map(cell))?;
        }
    }
    out.flush().map_err(|source| CliError::Io {
        action: "write",
        path: "csv output".into(),
        source,
    })?;
    Ok(())
}

pub fn write_json<W: Write>(record: &OutputRecord, mut w: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut w, record)?;
    writeln!(w).map_err(|source| CliError::Io {
        action: "write",
        path: "json output".into(),
        source,
    })
}

pub fn emit(record: &OutputRecord, format: Format, out: Option<&Path>) -> Result<()> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path).map_err(|source| CliError::Io {
            action: "create",
            path: path.display().to_string(),
            source,
        })?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => write_csv(record, sink),
        Format::Json => write_json(record, sink),
    }
}
