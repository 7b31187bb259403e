use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Montecarlo,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exact => "exact",
            Method::Montecarlo => "montecarlo",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(crate::error::Error::ParameterOutOfRange(format!("unknown format {s:?}"))),
        }
    }
}

/// One row per group of the sequence. Columns appear in CSV in field order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub n: usize,
    pub group: String,
    pub rank: usize,
    pub log10_order: f64,
    pub mean: f64,
    /// Exact variance for exact rows, unbiased estimate for sampled rows.
    pub variance: f64,
    /// The exact variance as a reduced fraction, when known.
    pub variance_exact: Option<String>,
    pub d2: Option<f64>,
    pub ks: Option<f64>,
    pub method: Method,
    pub samples: Option<u64>,
    pub diagnostic: Option<String>,
    pub wall_time_ms: Option<f64>,
}

pub const CSV_COLUMNS: [&str; 13] = [
    "n",
    "group",
    "rank",
    "log10_order",
    "mean",
    "variance",
    "variance_exact",
    "d2",
    "ks",
    "method",
    "samples",
    "diagnostic",
    "wall_time_ms",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub name: String,
    pub seed: u64,
    pub rows: Vec<ReportRow>,
    /// Set when the variance column does not grow along the sequence.
    pub warning: Option<String>,
}

impl ExperimentReport {
    pub fn new(name: impl Into<String>, seed: u64, rows: Vec<ReportRow>) -> Self {
        let warning = variance_warning(&rows);
        ExperimentReport {
            schema_version: REPORT_SCHEMA_VERSION,
            name: name.into(),
            seed,
            rows,
            warning,
        }
    }
}

fn variance_warning(rows: &[ReportRow]) -> Option<String> {
    match rows {
        [] => None,
        [_] => Some("single group: variance growth cannot be assessed".into()),
        [first, .., last] if last.variance <= first.variance => Some(format!(
            "variance does not grow along the sequence ({} at n = {}, {} at n = {})",
            first.variance, first.n, last.variance, last.n
        )),
        _ => None,
    }
}

pub fn write_report<W: Write>(report: &ExperimentReport, format: Format, out: W) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
            w.write_record(CSV_COLUMNS).map_err(csv_error)?;
            for row in &report.rows {
                w.serialize(row).map_err(csv_error)?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut out = out;
            serde_json::to_writer_pretty(&mut out, report)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> crate::error::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e.into(),
        other => std::io::Error::other(format!("{other:?}")).into(),
    }
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit_report(report: &ExperimentReport, format: Format, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => {
            let file = std::io::BufWriter::new(std::fs::File::create(p)?);
            write_report(report, format, file)
        }
        None => write_report(report, format, std::io::stdout().lock()),
    }
}

pub fn read_report_json(text: &str) -> Result<ExperimentReport> {
    Ok(serde_json::from_str(text)?)
}
