//! Tabular experiment reports with CSV and JSON emitters.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_sig12, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Cell {
    Integer(#[serde(with = "bigint_str")] BigInt),
    Rational(#[serde(with = "crate::exact::rational_str")] Rational),
    /// Display-only float, already rendered at 12 significant digits.
    Float(String),
    Text(String),
    Bool(bool),
    Missing,
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl Cell {
    pub fn int(v: impl Into<BigInt>) -> Cell {
        Cell::Integer(v.into())
    }

    pub fn float(v: f64) -> Cell {
        Cell::Float(format_sig12(v))
    }

    pub fn text(v: impl Into<String>) -> Cell {
        Cell::Text(v.into())
    }

    fn exact_value(&self) -> Option<Rational> {
        match self {
            Cell::Integer(v) => Some(Rational::from_integer(v.clone())),
            Cell::Rational(r) => Some(r.clone()),
            _ => None,
        }
    }

    fn render_csv(&self) -> String {
        match self {
            Cell::Integer(v) => v.to_string(),
            Cell::Rational(r) => r.to_string(),
            Cell::Float(s) => s.clone(),
            Cell::Text(s) => {
                if s.contains([',', '"', '\n', '\r']) {
                    format!("\"{}\"", s.replace('"', "\"\""))
                } else {
                    s.clone()
                }
            }
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => String::new(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Cmp {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

/// A row-level inequality `lhs cmp rhs` between two exact columns whose
/// truth value is stored in the boolean column `verdict`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub lhs: String,
    pub cmp: Cmp,
    pub rhs: String,
    pub verdict: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub kind: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    #[serde(default)]
    pub assertions: Vec<Assertion>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Csv,
    Json,
}

impl Report {
    pub fn new(kind: impl Into<String>, columns: &[&str]) -> Report {
        Report { kind: kind.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new(), assertions: Vec::new() }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width differs from header");
        self.rows.push(row);
    }

    /// Recomputes every asserted inequality from its exact operands and
    /// checks the stored verdicts. Rows with a missing operand are skipped.
    pub fn recheck(&self) -> Result<()> {
        for a in &self.assertions {
            let idx = |name: &str| self.column(name).ok_or_else(|| Error::Consistency(format!("assertion names unknown column `{name}`")));
            let (l, r, v) = (idx(&a.lhs)?, idx(&a.rhs)?, idx(&a.verdict)?);
            for (i, row) in self.rows.iter().enumerate() {
                let (Some(x), Some(y)) = (row[l].exact_value(), row[r].exact_value()) else { continue };
                let truth = match a.cmp {
                    Cmp::Lt => x < y,
                    Cmp::Le => x <= y,
                    Cmp::Ge => x >= y,
                    Cmp::Gt => x > y,
                };
                if row[v] != Cell::Bool(truth) {
                    return Err(Error::Consistency(format!("row {i}: stored `{}` disagrees with {} vs {}", a.verdict, a.lhs, a.rhs)));
                }
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render_csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Report> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("report JSON: {e}")))
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        self.recheck()?;
        Ok(match format {
            ReportFormat::Csv => self.to_csv(),
            ReportFormat::Json => self.to_json(),
        })
    }
}

/// Rechecks assertions and writes the report to `path`.
pub fn emit_report(report: &Report, format: ReportFormat, path: &Path) -> Result<()> {
    let text = report.render(format)?;
    std::fs::write(path, text).map_err(|source| Error::Io { path: path.to_path_buf(), source })
}
