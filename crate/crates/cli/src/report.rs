//! Tabular experiment reports rendered as CSV or JSON.

use std::time::Duration;

use quditbench::games::Interval;
use serde::Serialize;
use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Marker written in the `ci99` column for values computed exactly.
pub const EXACT: &str = "exact";

pub fn ci_cell(ci: &Interval) -> Value {
    Value::String(format!("[{}, {}]", round(ci.low), round(ci.high)))
}

/// Rounds to 12 significant digits so that reports do not depend on the last
/// few bits of floating-point reductions.
pub fn round(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn num(x: f64) -> Value {
    json!(round(x))
}

#[derive(Debug, Clone)]
pub struct Report {
    command: String,
    config: Value,
    columns: Vec<&'static str>,
    rows: Vec<Vec<Value>>,
    failing: Vec<String>,
}

impl Report {
    pub fn new(command: &str, config: &impl Serialize, columns: &[&'static str]) -> Self {
        Self {
            command: command.to_string(),
            config: serde_json::to_value(config).expect("config serializes"),
            columns: columns.to_vec(),
            rows: Vec::new(),
            failing: Vec::new(),
        }
    }

    /// Appends a row whose last column is `pass`. `label` names the cell in
    /// the failure listing.
    pub fn push(&mut self, mut cells: Vec<Value>, pass: bool, label: impl Into<String>) {
        cells.push(Value::Bool(pass));
        assert_eq!(cells.len(), self.columns.len(), "row width for {}", self.command);
        if !pass {
            self.failing.push(label.into());
        }
        self.rows.push(cells);
    }

    pub fn failing(&self) -> &[String] {
        &self.failing
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(csv_field)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    /// JSON document; `wall_time` is `None` to omit timing.
    pub fn to_json(&self, wall_time: Option<Duration>) -> String {
        let cells: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().map(|c| c.to_string()).zip(row.iter().cloned()).collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("command".into(), json!(self.command));
        doc.insert("config".into(), self.config.clone());
        doc.insert("columns".into(), json!(self.columns));
        doc.insert("cells".into(), Value::Array(cells));
        doc.insert("pass".into(), json!(self.failing.is_empty()));
        doc.insert("failing".into(), json!(self.failing));
        if let Some(t) = wall_time {
            doc.insert("wall_time_s".into(), json!(t.as_secs_f64()));
        }
        serde_json::to_string_pretty(&Value::Object(doc)).expect("report serializes") + "\n"
    }
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", &json!({"q": 3}), &["q", "value", "ci99", "pass"]);
        r.push(vec![json!(3), num(0.5), json!(EXACT)], true, "q=3");
        r.push(vec![json!(4), Value::Null, ci_cell(&Interval { low: 0.25, high: 0.75 })], false, "q=4");
        r
    }

    #[test]
    fn csv_has_fixed_columns_and_quotes_intervals() {
        let csv = sample().to_csv();
        assert_eq!(csv, "q,value,ci99,pass\n3,0.5,exact,true\n4,,\"[0.25, 0.75]\",false\n");
    }

    #[test]
    fn json_mirrors_cells_in_column_order() {
        let r = sample();
        let text = r.to_json(None);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["cells"][0]["value"], json!(0.5));
        assert_eq!(v["failing"], json!(["q=4"]));
        assert_eq!(v["pass"], json!(false));
        assert!(v.get("wall_time_s").is_none());
        let keys: Vec<&String> = v["cells"][1].as_object().unwrap().keys().collect();
        assert_eq!(keys, ["q", "value", "ci99", "pass"]);
    }

    #[test]
    fn rounding_keeps_twelve_significant_digits() {
        assert_eq!(round(0.1 + 0.2), 0.3);
        assert_eq!(round(1.0 / 3.0), 0.333333333333);
        assert_eq!(round(0.0), 0.0);
        assert_eq!(round(12345.678), 12345.678);
        assert_eq!(round(1.4432899320099999e-15), 1.44328993201e-15);
    }
}
