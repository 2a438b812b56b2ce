//! Long-format output tables with byte-stable CSV and JSON encodings:
//! parsing an emitted file and re-emitting it reproduces it exactly.

use serde_json::{json, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Number(f64),
    Empty,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// 12 significant digits; enough to make re-parsing stable for every value
/// the library emits.
pub fn format_number(x: f64) -> String {
    format!("{x:.11e}")
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Text(s) => {
                        debug_assert!(!s.contains(',') && !s.contains('\n'));
                        s.clone()
                    }
                    Cell::Number(x) => format_number(*x),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let header = lines.next().ok_or("empty file")?;
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let mut rows = Vec::new();
        for line in lines {
            let row: Vec<Cell> = line
                .split(',')
                .map(|field| {
                    if field.is_empty() {
                        Cell::Empty
                    } else if let Ok(x) = field.parse::<f64>() {
                        // treat as numeric only if it round-trips to the
                        // exact emitted representation
                        if format_number(x) == field {
                            Cell::Number(x)
                        } else {
                            Cell::Text(field.to_string())
                        }
                    } else {
                        Cell::Text(field.to_string())
                    }
                })
                .collect();
            if row.len() != columns.len() {
                return Err(format!("row width {} != header width", row.len()));
            }
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|c| match c {
                            Cell::Text(s) => json!(s),
                            Cell::Number(x) => json!(x),
                            Cell::Empty => Value::Null,
                        })
                        .collect(),
                )
            })
            .collect();
        let mut out =
            serde_json::to_string_pretty(&json!({ "columns": self.columns, "rows": rows }))
                .expect("table serialization cannot fail");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, String> {
        let v: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let columns = v["columns"]
            .as_array()
            .ok_or("missing columns")?
            .iter()
            .map(|c| c.as_str().map(str::to_string).ok_or("bad column name"))
            .collect::<Result<Vec<_>, _>>()?;
        let rows = v["rows"]
            .as_array()
            .ok_or("missing rows")?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or("bad row")?
                    .iter()
                    .map(|c| match c {
                        Value::Null => Ok(Cell::Empty),
                        Value::String(s) => Ok(Cell::Text(s.clone())),
                        Value::Number(n) => {
                            n.as_f64().map(Cell::Number).ok_or("non-finite number")
                        }
                        _ => Err("bad cell"),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { columns, rows })
    }
}
