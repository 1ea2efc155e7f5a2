//! Deterministic JSON and CSV rendering.
//!
//! Numbers are rounded to 12 significant digits and printed in shortest
//! round-trip form, so repeated runs produce identical bytes.

use serde_json::{Map, Value};

use crate::config::Format;

/// Rounds to 12 significant digits; non-finite values pass through.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => serde_json::Number::from_f64(round12(*x)).map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Null => Value::Null,
        }
    }

    fn to_field(&self) -> String {
        match self.to_json() {
            Value::Null => String::new(),
            Value::String(s) => s,
            other => other.to_string(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(o: Option<T>) -> Self {
        o.map_or(Cell::Null, Into::into)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    /// Resolved configuration, embedded for provenance.
    pub config: Value,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(&'static str, Cell)>,
}

impl Report {
    pub fn new(command: &'static str, config: Value, columns: Vec<&'static str>) -> Self {
        Self {
            command,
            config,
            columns,
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn add_summary(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.summary.push((key, value.into()));
    }

    fn summary_json(&self) -> Value {
        Value::Object(self.summary.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect())
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(c, v)| (c.to_string(), v.to_json()))
                        .collect::<Map<_, _>>(),
                )
            })
            .collect();
        let doc = serde_json::json!({
            "command": self.command,
            "config": self.config,
            "rows": rows,
            "summary": self.summary_json(),
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV body preceded by `#` comment lines carrying command, configuration and summary.
    pub fn to_csv(&self) -> String {
        let mut out = format!(
            "# command: {}\n# config: {}\n# summary: {}\n",
            self.command,
            self.config,
            self.summary_json()
        );
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::to_field)).expect("in-memory write");
        }
        out.push_str(&String::from_utf8(w.into_inner().expect("flush")).expect("utf8"));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Csv => self.to_csv(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_to_twelve_digits() {
        assert_eq!(round12(0.1 + 0.2), 0.3);
        assert_eq!(round12(1.234_567_890_123_456e-11), 1.23456789012e-11);
        assert!(round12(f64::NAN).is_nan());
    }

    #[test]
    fn json_keys_are_sorted() {
        let mut r = Report::new("x", Value::Null, vec!["zeta", "alpha"]);
        r.push_row(vec![1.0.into(), "a".into()]);
        let s = r.to_json();
        assert!(s.find("\"alpha\"").unwrap() < s.find("\"zeta\"").unwrap());
    }

    #[test]
    fn csv_keeps_column_order_and_blank_nulls() {
        let mut r = Report::new("x", Value::Null, vec!["b", "a"]);
        r.push_row(vec![Cell::Null, 2.5e-11.into()]);
        assert!(r.to_csv().ends_with("b,a\r\n,2.5e-11\r\n"));
    }
}
