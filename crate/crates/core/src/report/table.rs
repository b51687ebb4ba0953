//! Column-oriented tables with text, CSV and JSON renderings.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};

/// Bumped whenever a column is renamed, added or reordered.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}; expected text, csv or json")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    Int(u64),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
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

impl From<u32> for Cell {
    fn from(n: u32) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<u8> for Cell {
    fn from(n: u8) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// One serialized row; cells follow the table's column order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportRow(pub Vec<Cell>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportTable {
    pub name: &'static str,
    pub title: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<ReportRow>,
    /// Summary values, printed after the rows in text and in the JSON header.
    pub metadata: Vec<(&'static str, Cell)>,
}

impl ReportTable {
    pub fn new(name: &'static str, title: &'static str, columns: &[&'static str]) -> Self {
        ReportTable {
            name,
            title,
            columns: columns.to_vec(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn push(&mut self, cells: Vec<Cell>) {
        assert_eq!(cells.len(), self.columns.len(), "row width for table {}", self.name);
        self.rows.push(ReportRow(cells));
    }

    pub fn meta(&mut self, key: &'static str, value: impl Into<Cell>) {
        self.metadata.push((key, value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text(),
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("tables serialize");
                s.push('\n');
                s
            }
        }
    }

    fn text(&self) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.0.iter().map(Cell::render).collect())
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                cells
                    .iter()
                    .map(|r| r[c].len())
                    .chain([self.columns[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        let line = |out: &mut String, fields: Vec<&str>| {
            let padded: Vec<String> = fields.iter().zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
            writeln!(out, "{}", padded.join("  ").trim_end()).unwrap();
        };
        line(&mut out, self.columns.clone());
        line(
            &mut out,
            widths
                .iter()
                .map(|&w| "-".repeat(w))
                .collect::<Vec<_>>()
                .iter()
                .map(String::as_str)
                .collect(),
        );
        for r in &cells {
            line(&mut out, r.iter().map(String::as_str).collect());
        }
        for (k, v) in &self.metadata {
            writeln!(out, "{k}: {}", v.render()).unwrap();
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for r in &self.rows {
            let fields: Vec<String> = r.0.iter().map(Cell::render).collect();
            debug_assert!(
                fields.iter().all(|f| !f.contains(',') && !f.contains('"')),
                "CSV fields need no quoting"
            );
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn json(&self) -> Value {
        let mut meta = Map::new();
        meta.insert("schema".into(), json!(format!("veldkamp-report/{SCHEMA_VERSION}")));
        meta.insert("table".into(), json!(self.name));
        meta.insert("title".into(), json!(self.title));
        meta.insert("columns".into(), json!(self.columns));
        for (k, v) in &self.metadata {
            meta.insert((*k).into(), v.json());
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(&r.0)
                        .map(|(c, v)| ((*c).to_string(), v.json()))
                        .collect(),
                )
            })
            .collect();
        json!({ "metadata": Value::Object(meta), "rows": rows })
    }
}

/// Checks a rendered JSON document against the column list of `expected`:
/// header fields present, schema tag current, and every row carrying exactly
/// the declared columns in declared order.
pub fn check_schema(doc: &Value, expected: &ReportTable) -> Result<(), String> {
    let meta = doc
        .get("metadata")
        .and_then(Value::as_object)
        .ok_or("missing metadata object")?;
    let schema = meta.get("schema").and_then(Value::as_str).ok_or("missing schema tag")?;
    if schema != format!("veldkamp-report/{SCHEMA_VERSION}") {
        return Err(format!("schema tag {schema:?}"));
    }
    let keys: Vec<&str> = meta.keys().map(String::as_str).take(4).collect();
    if keys != ["schema", "table", "title", "columns"] {
        return Err(format!("metadata header order {keys:?}"));
    }
    let rows = doc.get("rows").and_then(Value::as_array).ok_or("missing rows array")?;
    if rows.len() != expected.rows.len() {
        return Err(format!("{} rows, expected {}", rows.len(), expected.rows.len()));
    }
    for (i, row) in rows.iter().enumerate() {
        let obj = row.as_object().ok_or_else(|| format!("row {i} is not an object"))?;
        let cols: Vec<&str> = obj.keys().map(String::as_str).collect();
        if cols != expected.columns {
            return Err(format!("row {i} has columns {cols:?}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ReportTable {
        let mut t = ReportTable::new("demo", "Demo", &["name", "n", "note"]);
        t.push(vec!["a".into(), 3u64.into(), Cell::Empty]);
        t.push(vec!["bb".into(), 12u64.into(), "x;y".into()]);
        t.meta("total", 15u64);
        t
    }

    #[test]
    fn csv_is_plain() {
        assert_eq!(sample().render(Format::Csv), "name,n,note\na,3,\nbb,12,x;y\n");
    }

    #[test]
    fn text_is_aligned() {
        let text = sample().render(Format::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "name  n   note");
        assert_eq!(lines[3], "a     3");
        assert_eq!(lines[5], "total: 15");
    }

    #[test]
    fn json_round_trips_schema() {
        let t = sample();
        let doc: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        check_schema(&doc, &t).unwrap();
        assert_eq!(doc["rows"][1]["n"], 12);
        assert_eq!(doc["metadata"]["total"], 15);
        let mut broken = doc.clone();
        broken["rows"][0].as_object_mut().unwrap().remove("n");
        assert!(check_schema(&broken, &t).is_err());
    }

    #[test]
    fn format_names() {
        assert_eq!("csv".parse::<Format>(), Ok(Format::Csv));
        assert!("xml".parse::<Format>().is_err());
    }
}
