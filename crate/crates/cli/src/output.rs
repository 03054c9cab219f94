//! Table assembly and CSV/JSON rendering. Output is built as one byte
//! string so identical configurations produce identical bytes.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// One table cell.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Text(String),
    /// Exact decimal integer, kept as text so arbitrary precision survives
    /// both formats.
    Count(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => fmt_sig(*v),
            Cell::Text(s) => s.clone(),
            Cell::Count(s) => s.clone(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Int(v) => serde_json::Value::from(*v),
            Cell::Float(v) => serde_json::Number::from_f64(*v)
                .map(serde_json::Value::Number)
                .unwrap_or(serde_json::Value::Null),
            Cell::Text(s) => serde_json::Value::from(s.as_str()),
            Cell::Count(s) => serde_json::Value::from(s.as_str()),
        }
    }
}

/// Fixed-schema table plus the config echo that lands in JSON meta.
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: BTreeMap<String, String>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new(), meta: BTreeMap::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn set_meta(&mut self, key: &str, value: impl ToString) {
        self.meta.insert(key.to_string(), value.to_string());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let mut meta = serde_json::Map::new();
        meta.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        for (k, v) in &self.meta {
            meta.insert(k.clone(), v.as_str().into());
        }
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut object = serde_json::Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    object.insert((*col).to_string(), cell.json());
                }
                serde_json::Value::Object(object)
            })
            .collect();
        let mut root = serde_json::Map::new();
        root.insert("meta".into(), serde_json::Value::Object(meta));
        root.insert("rows".into(), serde_json::Value::Array(rows));
        let mut text = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("serializable");
        text.push('\n');
        text
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Floats with 12 significant digits in plain decimal.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0.000000000000".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).clamp(0, 17) as usize;
    format!("{x:.decimals$}")
}

/// Writes the rendered bytes to the path or stdout.
pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}
