//! Machine-readable reports: a list of named fields plus an optional table,
//! rendered as CSV or JSON. Every report starts with `schema = 1`. Floats are
//! written with 17 significant digits.

use std::fmt::Write as _;
use std::io::{self, Write};

pub const SCHEMA_VERSION: i64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Value>),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(v)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_string())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

impl<T: Into<Value> + Copy> From<&[T]> for Value {
    fn from(v: &[T]) -> Self {
        Value::Array(v.iter().map(|x| (*x).into()).collect())
    }
}

/// `printf("%.17g")`.
pub fn g17(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return if v.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{:.16e}", v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        let m = trim_zeros(mantissa.to_string());
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub fields: Vec<(String, Value)>,
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            fields: vec![
                ("schema".into(), Value::Int(SCHEMA_VERSION)),
                ("command".into(), Value::Str(command.into())),
            ],
            table: None,
        }
    }

    pub fn field(mut self, name: &str, v: impl Into<Value>) -> Self {
        self.fields.push((name.to_string(), v.into()));
        self
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> io::Result<()> {
        let text = match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        };
        out.write_all(text.as_bytes())
    }

    /// `# name=value` lines for the fields, then the table with a header row.
    /// A report without a table lists its fields as `field,value` rows.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        match &self.table {
            Some(table) => {
                for (k, v) in &self.fields {
                    let _ = writeln!(s, "# {k}={}", csv_value(v));
                }
                let _ = writeln!(s, "{}", table.columns.join(","));
                for row in &table.rows {
                    let cells: Vec<String> = row.iter().map(csv_value).collect();
                    let _ = writeln!(s, "{}", cells.join(","));
                }
            }
            None => {
                let _ = writeln!(s, "field,value");
                for (k, v) in &self.fields {
                    let _ = writeln!(s, "{k},{}", csv_value(v));
                }
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = String::from("{");
        for (i, (k, v)) in self.fields.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            let _ = write!(s, "\n  {}: {}", json_string(k), json_value(v));
        }
        if let Some(table) = &self.table {
            let cols: Vec<String> = table.columns.iter().map(|c| json_string(c)).collect();
            let _ = write!(s, ",\n  \"columns\": [{}]", cols.join(", "));
            s.push_str(",\n  \"rows\": [");
            for (i, row) in table.rows.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let cells: Vec<String> = row.iter().map(json_value).collect();
                let _ = write!(s, "\n    [{}]", cells.join(", "));
            }
            s.push_str(if table.rows.is_empty() { "]" } else { "\n  ]" });
        }
        s.push_str("\n}\n");
        s
    }
}

fn csv_value(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(f) => g17(*f),
        Value::Str(s) => {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.clone()
            }
        }
        Value::Array(items) => items.iter().map(csv_value).collect::<Vec<_>>().join(";"),
    }
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("string serialization")
}

fn json_value(v: &Value) -> String {
    match v {
        Value::Null => "null".into(),
        Value::Bool(b) => b.to_string(),
        Value::Int(i) => i.to_string(),
        Value::Float(f) if f.is_finite() => g17(*f),
        Value::Float(_) => "null".into(),
        Value::Str(s) => json_string(s),
        Value::Array(items) => {
            format!("[{}]", items.iter().map(json_value).collect::<Vec<_>>().join(", "))
        }
    }
}
