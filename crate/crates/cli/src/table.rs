//! Tabular output with an embedded metadata block, serialized to CSV or
//! JSON deterministically and round-trippably.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};

/// One table value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Str(String),
}

impl Cell {
    fn to_csv_field(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            // 17 significant digits: round-trips every f64 exactly
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Str(s) => {
                if s.contains([',', '"', '\n', '\r']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
        }
    }

    fn to_json_value(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Value::from(*v),
            Cell::Str(s) => serde_json::Value::from(s.as_str()),
        }
    }

    fn from_json_value(v: &serde_json::Value) -> Result<Cell> {
        Ok(match v {
            serde_json::Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Cell::Int(i)
                } else {
                    Cell::Float(n.as_f64().context("non-finite number in table")?)
                }
            }
            serde_json::Value::String(s) => Cell::Str(s.clone()),
            // non-finite floats serialize as null
            serde_json::Value::Null => Cell::Float(f64::NAN),
            other => bail!("unsupported cell value: {other}"),
        })
    }
}

/// Rectangular named-column table plus a key-value metadata block echoing
/// the full effective configuration of the run that produced it.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputTable {
    pub metadata: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl OutputTable {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        OutputTable {
            metadata: BTreeMap::new(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width {} != column count {}",
            row.len(),
            self.columns.len()
        );
        self.rows.push(row);
    }

    /// CSV with `# key=value` metadata comment lines before the header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Cell::to_csv_field).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    /// JSON object with `metadata`, `columns`, and per-column `data` arrays.
    pub fn to_json(&self) -> String {
        let mut data = serde_json::Map::new();
        for (ci, name) in self.columns.iter().enumerate() {
            let col: Vec<serde_json::Value> =
                self.rows.iter().map(|r| r[ci].to_json_value()).collect();
            data.insert(name.clone(), serde_json::Value::Array(col));
        }
        let obj = serde_json::json!({
            "metadata": self.metadata,
            "columns": self.columns,
            "data": data,
        });
        let mut s = serde_json::to_string_pretty(&obj).expect("table serialization");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text)?;
        let metadata: BTreeMap<String, String> = v
            .get("metadata")
            .and_then(|m| m.as_object())
            .context("missing metadata object")?
            .iter()
            .map(|(k, val)| {
                Ok((
                    k.clone(),
                    val.as_str().context("metadata values must be strings")?.to_string(),
                ))
            })
            .collect::<Result<_>>()?;
        let columns: Vec<String> = v
            .get("columns")
            .and_then(|c| c.as_array())
            .context("missing columns array")?
            .iter()
            .map(|c| Ok(c.as_str().context("column names must be strings")?.to_string()))
            .collect::<Result<_>>()?;
        let data = v
            .get("data")
            .and_then(|d| d.as_object())
            .context("missing data object")?;
        let mut cols_cells: Vec<Vec<Cell>> = Vec::with_capacity(columns.len());
        let mut height: Option<usize> = None;
        for name in &columns {
            let arr = data
                .get(name)
                .and_then(|a| a.as_array())
                .with_context(|| format!("missing data column '{name}'"))?;
            if *height.get_or_insert(arr.len()) != arr.len() {
                bail!("ragged data columns");
            }
            cols_cells.push(arr.iter().map(Cell::from_json_value).collect::<Result<_>>()?);
        }
        let height = height.unwrap_or(0);
        let rows = (0..height)
            .map(|r| cols_cells.iter().map(|c| c[r].clone()).collect())
            .collect();
        Ok(OutputTable {
            metadata,
            columns,
            rows,
        })
    }
}
