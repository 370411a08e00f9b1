//! Deterministic table output: CSV with '.' decimals, 17 significant digits
//! and LF line endings, or JSON with sorted keys.

use std::io::{self, Write};

use serde_json::{json, Value};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Str(String),
    Num(f64),
    Int(i64),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Str(s) => csv_escape(s),
            Cell::Num(v) => fmt_float(*v),
            Cell::Int(i) => i.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Str(s) => json!(s),
            Cell::Num(v) => json!(v),
            Cell::Int(i) => json!(i),
            Cell::Empty => Value::Null,
        }
    }
}

/// 17 significant digits in scientific notation; round-trips every f64.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Quotes a field when it holds a comma, quote, or newline (RFC 4180).
fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Splits one CSV line produced by [`Table::write_csv`].
pub fn split_csv_line(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut field = String::new();
    let mut quoted = false;
    let mut chars = line.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '"' if quoted => {
                if chars.peek() == Some(&'"') {
                    chars.next();
                    field.push('"');
                } else {
                    quoted = false;
                }
            }
            '"' if field.is_empty() => quoted = true,
            ',' if !quoted => {
                out.push(std::mem::take(&mut field));
            }
            c => field.push(c),
        }
    }
    out.push(field);
    out
}

#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            writeln!(w, "{}", line.join(","))?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row.iter()) {
                    obj.insert(name.clone(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        json!(rows)
    }

    pub fn write_json<W: Write>(&self, mut w: W) -> io::Result<()> {
        let text = serde_json::to_string_pretty(&self.to_json())?;
        w.write_all(text.as_bytes())?;
        writeln!(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formatting_is_stable() {
        let mut t = Table::new(&["name", "value", "count"]);
        t.push(vec![Cell::Str("a".into()), Cell::Num(0.1), Cell::Int(3)]);
        t.push(vec![
            Cell::Str("b".into()),
            Cell::Num(-2.5e-11),
            Cell::Empty,
        ]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "name,value,count\na,1.0000000000000001e-1,3\nb,-2.5000000000000001e-11,\n"
        );
        assert!(!text.contains('\r'));
    }

    #[test]
    fn float_roundtrip() {
        for v in [0.1, 1.0 / 3.0, 2.66, 1e-300, -7.25] {
            let s = fmt_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn json_keys_are_sorted() {
        let mut t = Table::new(&["zeta", "alpha"]);
        t.push(vec![Cell::Int(1), Cell::Int(2)]);
        let text = serde_json::to_string(&t.to_json()).unwrap();
        assert_eq!(text, r#"[{"alpha":2,"zeta":1}]"#);
    }

    #[test]
    fn csv_quoting_round_trips() {
        let mut t = Table::new(&["name", "value"]);
        t.push(vec![Cell::Str("f(a, b)".into()), Cell::Int(1)]);
        t.push(vec![Cell::Str("say \"hi\"".into()), Cell::Int(2)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "\"f(a, b)\",1");
        assert_eq!(
            split_csv_line(lines[1]),
            vec!["f(a, b)".to_string(), "1".to_string()]
        );
        assert_eq!(
            split_csv_line(lines[2]),
            vec!["say \"hi\"".to_string(), "2".to_string()]
        );
    }
}
