//! Result tables and their CSV / JSON encodings.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Real(Vec<f64>),
    Text(Vec<String>),
}

impl Column {
    pub fn len(&self) -> usize {
        match self {
            Column::Real(v) => v.len(),
            Column::Text(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Named columns of equal length plus a metadata object.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    pub meta: Map<String, Value>,
    columns: Vec<(String, Column)>,
}

impl ResultTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn meta(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.meta.insert(key.to_string(), value.into());
        self
    }

    /// Appends a column; panics on a length mismatch, which is a programming error.
    pub fn real(&mut self, name: &str, values: Vec<f64>) -> &mut Self {
        self.push(name, Column::Real(values))
    }

    pub fn text(&mut self, name: &str, values: Vec<String>) -> &mut Self {
        self.push(name, Column::Text(values))
    }

    fn push(&mut self, name: &str, col: Column) -> &mut Self {
        if let Some((_, first)) = self.columns.first() {
            assert_eq!(first.len(), col.len(), "column {name} has the wrong length");
        }
        self.columns.push((name.to_string(), col));
        self
    }

    pub fn columns(&self) -> &[(String, Column)] {
        &self.columns
    }

    pub fn column(&self, name: &str) -> Option<&Column> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, c)| c)
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, c)| c.len())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self.columns.iter().map(|(n, _)| n.as_str()).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for i in 0..self.rows() {
            for (j, (_, c)) in self.columns.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                match c {
                    Column::Real(v) => write_real(&mut out, v[i]),
                    Column::Text(v) => out.push_str(&csv_text(&v[i])),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut cols = Map::new();
        for (name, c) in &self.columns {
            let v = match c {
                Column::Real(v) => Value::Array(v.iter().map(|&x| real_json(x)).collect()),
                Column::Text(v) => Value::Array(v.iter().cloned().map(Value::String).collect()),
            };
            cols.insert(name.clone(), v);
        }
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(self.meta.clone()));
        root.insert("columns".into(), Value::Object(cols));
        let mut s = serde_json::to_string_pretty(&Value::Object(root)).expect("json values serialize");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn emit(&self, format: Format, path: Option<&Path>) -> std::io::Result<()> {
        let text = self.render(format);
        match path {
            Some(p) => std::fs::write(p, text),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()
            }
        }
    }
}

/// 17 significant digits; `inf`, `-inf` and `NaN` for non-finite values.
fn write_real(out: &mut String, x: f64) {
    if x.is_nan() {
        out.push_str("NaN");
    } else if x.is_infinite() {
        out.push_str(if x > 0.0 { "inf" } else { "-inf" });
    } else {
        // `+ 0.0` folds negative zero into zero
        write!(out, "{:.16e}", x + 0.0).expect("writing to a string");
    }
}

/// Non-finite values have no JSON encoding and become `null`.
pub fn real_json(x: f64) -> Value {
    serde_json::Number::from_f64(x + 0.0).map_or(Value::Null, Value::Number)
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let mut t = ResultTable::new();
        t.real("r", vec![]).real("P", vec![]);
        assert_eq!(t.to_csv(), "r,P\n");
    }

    #[test]
    fn csv_keeps_seventeen_digits() {
        let mut t = ResultTable::new();
        t.real("x", vec![0.1, f64::INFINITY, f64::NAN, -2.5e-300])
            .text("k", vec!["a".into(), "b,c".into(), "d".into(), "e".into()]);
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[1], "1.0000000000000001e-1,a");
        assert_eq!(lines[2], "inf,\"b,c\"");
        assert_eq!(lines[3], "NaN,d");
        assert_eq!(lines[4].split(',').next().unwrap().parse::<f64>().unwrap(), -2.5e-300);
    }

    #[test]
    fn json_round_trip() {
        let mut t = ResultTable::new();
        t.meta("n", 3).real("eps", vec![0.2]).real("T", vec![9.247515788430356]);
        let v: Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["meta"]["n"], 3);
        assert_eq!(v["columns"]["T"][0].as_f64().unwrap(), 9.247515788430356);
        let keys: Vec<&String> = v["columns"].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["eps", "T"]);
    }

    #[test]
    #[should_panic]
    fn ragged_columns_are_rejected() {
        ResultTable::new().real("a", vec![1.0]).real("b", vec![]);
    }
}
