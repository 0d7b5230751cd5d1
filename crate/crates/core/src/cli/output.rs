use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use super::CliError;

/// One table cell. Non-finite numbers are carried as text (`inf`, `-inf`, `NaN`)
/// so that both output formats read back to the same value.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    /// Parses a field as a finite number, falling back to text.
    pub fn parse(field: &str) -> Self {
        match field.parse::<f64>() {
            Ok(x) if x.is_finite() => Cell::Num(x),
            _ => Cell::Text(field.to_string()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Text(s) => s.parse().ok(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        if x.is_finite() {
            Cell::Num(x)
        } else {
            Cell::Text(x.to_string())
        }
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Num(x as f64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Text(b.to_string())
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

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(x) if *x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e15) => write!(f, "{x:e}"),
            Cell::Num(x) => write!(f, "{x}"),
            Cell::Text(s) => f.write_str(s),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Cell::Num(x) => s.serialize_f64(*x),
            Cell::Text(t) => s.serialize_str(t),
        }
    }
}

impl<'de> Deserialize<'de> for Cell {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        Ok(match Raw::deserialize(d)? {
            Raw::Num(x) => Cell::Num(x),
            Raw::Text(t) => Cell::Text(t),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }
}

/// Everything a subcommand reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
    pub diagnostics: BTreeMap<String, Value>,
    pub tables: Vec<Table>,
    pub version: String,
}

/// JSON for a float, with non-finite values spelled as strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        Value::from(x)
    } else {
        Value::from(x.to_string())
    }
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            result: Value::Null,
            diagnostics: BTreeMap::new(),
            tables: Vec::new(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn diag(&mut self, key: &str, value: impl Into<Value>) {
        self.diagnostics.insert(key.to_string(), value.into());
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output records serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Format(e.to_string()))
    }

    /// Every table as a `# name` line, a header and its rows; tables are
    /// separated by a blank line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (i, t) in self.tables.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str("# ");
            out.push_str(&t.name);
            out.push('\n');
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.columns).expect("in-memory write");
            for r in &t.rows {
                w.write_record(r.iter().map(Cell::to_string)).expect("in-memory write");
            }
            out.push_str(&String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells"));
        }
        out
    }
}

/// Reads the output of [`OutputRecord::to_csv`] back into tables.
pub fn parse_csv_tables(text: &str) -> Result<Vec<Table>, CliError> {
    let mut tables = Vec::new();
    let mut blocks: Vec<(String, String)> = Vec::new();
    for line in text.lines() {
        if let Some(name) = line.strip_prefix("# ") {
            blocks.push((name.to_string(), String::new()));
        } else if !line.is_empty() {
            let (_, body) =
                blocks.last_mut().ok_or_else(|| CliError::Format("table data before a '# name' line".into()))?;
            body.push_str(line);
            body.push('\n');
        }
    }
    for (name, body) in blocks {
        let mut r = csv::Reader::from_reader(body.as_bytes());
        let columns = r.headers().map_err(|e| CliError::Format(e.to_string()))?.iter().map(str::to_string).collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| CliError::Format(e.to_string()))?;
            rows.push(rec.iter().map(Cell::parse).collect());
        }
        tables.push(Table { name, columns, rows });
    }
    Ok(tables)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut rec = OutputRecord::new("demo").param("n", 3);
        rec.result = serde_json::json!({ "mu": num(f64::INFINITY) });
        let mut t = Table::new("values", &["x", "label"]);
        t.push(vec![Cell::from(0.1), "a,b".into()]);
        t.push(vec![Cell::from(2.5579538487363607e-13), Cell::from(6.02e23)]);
        t.push(vec![Cell::from(f64::NEG_INFINITY), Cell::from(true)]);
        rec.tables.push(t);
        rec.tables.push(Table::new("empty", &["k"]));
        rec
    }

    #[test]
    fn json_round_trip() {
        let rec = sample();
        assert_eq!(OutputRecord::from_json(&rec.to_json()).unwrap(), rec);
        assert_eq!(rec.result["mu"], "inf");
    }

    #[test]
    fn csv_round_trip() {
        let rec = sample();
        let back = parse_csv_tables(&rec.to_csv()).unwrap();
        assert_eq!(back, rec.tables);
    }

    #[test]
    fn cells_parse_numbers_only_when_finite() {
        assert_eq!(Cell::parse("1e-3"), Cell::Num(1e-3));
        assert_eq!(Cell::parse("inf"), Cell::Text("inf".into()));
        assert_eq!(Cell::parse("inf").as_f64(), Some(f64::INFINITY));
    }
}
