use std::fmt::Write as _;

use serde_json::{Map, Value};

/// A rectangular result: header plus string cells, emitted as CSV or as a JSON array of objects.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(s, "{}", r.iter().map(|c| quote(c)).collect::<Vec<_>>().join(","));
        }
        s
    }

    /// Cells that parse as numbers become JSON numbers; everything else stays a string.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (h, c) in self.header.iter().zip(r) {
                        m.insert(h.clone(), cell_value(c));
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }
}

fn quote(c: &str) -> String {
    if c.contains([',', '"', '\n']) {
        format!("\"{}\"", c.replace('"', "\"\""))
    } else {
        c.to_string()
    }
}

fn cell_value(c: &str) -> Value {
    if c.is_empty() {
        return Value::Null;
    }
    if let Ok(i) = c.parse::<i64>() {
        return Value::from(i);
    }
    match c.parse::<f64>() {
        Ok(v) if v.is_finite() => Value::from(v),
        _ => Value::from(c),
    }
}
