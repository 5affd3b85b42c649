//! Tabular output (CSV or JSONL) and the `indicators.csv` reader.
//!
//! Undefined values are written as empty fields (`null` in JSONL), never as
//! zero. Floats use Rust's shortest round-trip formatting so output is
//! byte-stable.

use std::fmt::Write as _;
use std::io::Read;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::graph::CitationGraph;
use crate::indicators::{IndicatorRow, IndicatorTable};
use crate::percentile::Classified;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Jsonl,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Jsonl => "jsonl",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(Error::InvalidConfig(format!("unknown format `{other}`"))),
        }
    }
}

pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

pub fn fmt_opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

pub fn fmt_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// A named table of string cells; `name` is the file stem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: impl Into<String>, header: &[&str]) -> Table {
        Table {
            name: name.into(),
            header: header.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len(), "row width for {}", self.name);
        self.rows.push(row);
    }

    pub fn file_name(&self, format: Format) -> String {
        format!("{}.{}", self.name, format.extension())
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
                w.write_record(&self.header)?;
                for r in &self.rows {
                    w.write_record(r)?;
                }
                w.into_inner().map_err(|e| Error::Stream(e.into_error()))
            }
            Format::Jsonl => {
                let mut out = String::new();
                for r in &self.rows {
                    let obj: serde_json::Map<String, serde_json::Value> = self
                        .header
                        .iter()
                        .zip(r)
                        .map(|(h, v)| (h.clone(), json_cell(v)))
                        .collect();
                    writeln!(out, "{}", serde_json::Value::Object(obj)).expect("string write");
                }
                Ok(out.into_bytes())
            }
        }
    }
}

fn json_cell(v: &str) -> serde_json::Value {
    if v.is_empty() {
        return serde_json::Value::Null;
    }
    if let Ok(i) = v.parse::<i64>() {
        return i.into();
    }
    if let Ok(f) = v.parse::<f64>() {
        if let Some(n) = serde_json::Number::from_f64(f) {
            return serde_json::Value::Number(n);
        }
    }
    serde_json::Value::String(v.to_string())
}

pub const INDICATOR_HEADER: [&str; 11] =
    ["journal_id", "year", "n_pubs", "i3", "i3_n", "jif", "citescore", "h", "i10", "h5", "citations"];

/// `indicators.csv`: the ten indicator columns plus trailing `citations`.
pub fn indicators_table(table: &IndicatorTable) -> Table {
    let mut t = Table::new("indicators", &INDICATOR_HEADER);
    for r in &table.rows {
        t.push(vec![
            r.journal_id.clone(),
            r.year.to_string(),
            r.n_pubs.to_string(),
            r.i3.to_string(),
            fmt_opt_f64(r.i3_n),
            fmt_opt_f64(r.jif),
            fmt_opt_f64(r.citescore),
            r.h_index.to_string(),
            r.i10_index.to_string(),
            r.h5_index.to_string(),
            fmt_opt(r.citations),
        ]);
    }
    t
}

#[derive(Debug, Deserialize)]
struct IndicatorCsvRow {
    journal_id: String,
    year: i32,
    #[serde(default)]
    n_pubs: Option<u64>,
    #[serde(default)]
    i3: Option<u64>,
    #[serde(default)]
    i3_n: Option<f64>,
    #[serde(default)]
    jif: Option<f64>,
    #[serde(default)]
    citescore: Option<f64>,
    #[serde(default)]
    h: Option<u64>,
    #[serde(default)]
    i10: Option<u64>,
    #[serde(default)]
    h5: Option<u64>,
    #[serde(default)]
    citations: Option<u64>,
}

/// Reads `indicators.csv`. Columns may be missing or empty (a JCR-only
/// table has no I3, for instance); the `citations` column is optional.
pub fn read_indicators<R: Read>(source: R) -> Result<IndicatorTable> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(source);
    let mut table = IndicatorTable::default();
    for rec in reader.deserialize::<IndicatorCsvRow>() {
        let r = rec?;
        table.rows.push(IndicatorRow {
            journal_id: r.journal_id,
            year: r.year,
            n_pubs: r.n_pubs.unwrap_or(0),
            i3: r.i3.unwrap_or(0),
            i3_n: r.i3_n,
            jif: r.jif,
            citescore: r.citescore,
            h_index: r.h.unwrap_or(0),
            i10_index: r.i10.unwrap_or(0),
            h5_index: r.h5.unwrap_or(0),
            citations: r.citations,
        });
    }
    table.sort();
    Ok(table)
}

/// Per-paper dump: `paper_id,year,doc_type,frac_count,percentile,class`.
pub fn classifications_table(name: &str, graph: &CitationGraph, classified: &Classified) -> Table {
    let mut t = Table::new(name, &["paper_id", "year", "doc_type", "frac_count", "percentile", "class"]);
    let mut rows: Vec<Vec<String>> = classified
        .iter()
        .map(|(cohort, c)| {
            vec![
                graph.paper_id(c.paper).to_string(),
                cohort.year.to_string(),
                cohort.doc_type.to_string(),
                fmt_f64(c.fractional_count),
                fmt_f64(c.percentile),
                c.class.to_string(),
            ]
        })
        .collect();
    rows.sort();
    t.rows = rows;
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(id: &str, year: i32, jif: Option<f64>) -> IndicatorRow {
        IndicatorRow {
            journal_id: id.into(),
            year,
            n_pubs: 10,
            i3: 126,
            i3_n: Some(12.6),
            jif,
            citescore: None,
            h_index: 4,
            i10_index: 1,
            h5_index: 3,
            citations: Some(7),
        }
    }

    #[test]
    fn undefined_is_empty_not_zero() {
        let table = IndicatorTable { rows: vec![row("j", 2024, None)], asymmetries: vec![] };
        let csv = String::from_utf8(indicators_table(&table).render(Format::Csv).unwrap()).unwrap();
        assert_eq!(
            csv,
            "journal_id,year,n_pubs,i3,i3_n,jif,citescore,h,i10,h5,citations\nj,2024,10,126,12.6,,,4,1,3,7\n"
        );
        let back = read_indicators(csv.as_bytes()).unwrap();
        assert_eq!(back, table);
    }

    #[test]
    fn reader_accepts_the_ten_column_form() {
        let csv = "journal_id,year,n_pubs,i3,i3_n,jif,citescore,h,i10,h5\nb,2023,0,0,,1.5,,0,0,0\na,2024,3,6,2,,4,1,0,1\n";
        let t = read_indicators(csv.as_bytes()).unwrap();
        assert_eq!(t.rows[0].journal_id, "a");
        assert_eq!(t.rows[1].jif, Some(1.5));
        assert_eq!(t.rows[1].i3_n, None);
        assert_eq!(t.rows[1].citations, None);
    }

    #[test]
    fn jsonl_cells_are_typed() {
        let mut t = Table::new("x", &["a", "b", "c", "d"]);
        t.push(vec!["j1".into(), "3".into(), "".into(), "0.5".into()]);
        let s = String::from_utf8(t.render(Format::Jsonl).unwrap()).unwrap();
        assert_eq!(s, "{\"a\":\"j1\",\"b\":3,\"c\":null,\"d\":0.5}\n");
    }

    #[test]
    fn negative_zero_prints_as_zero() {
        assert_eq!(fmt_f64(-0.0), "0");
        assert_eq!(fmt_f64(0.25), "0.25");
    }
}
