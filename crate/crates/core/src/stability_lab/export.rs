use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::sweep::SweepRecord;
use super::verdict::TheoremVerdict;
use crate::error::{Error, Result};

pub const CSV_COLUMNS: [&str; 14] = [
    "family",
    "param",
    "eps",
    "d_k",
    "D_k",
    "Delta",
    "delta_H",
    "W0",
    "W1",
    "r_in",
    "R_circ",
    "R_star",
    "lemma_eq3_residual",
    "volume_bound_gap",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// From the file extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

/// Full JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct Report {
    pub records: Vec<SweepRecord>,
    #[serde(default)]
    pub verdicts: Vec<TheoremVerdict>,
}

#[allow(non_snake_case)]
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    family: String,
    param: f64,
    eps: f64,
    d_k: f64,
    D_k: f64,
    Delta: f64,
    delta_H: f64,
    W0: f64,
    W1: f64,
    r_in: f64,
    R_circ: f64,
    R_star: f64,
    lemma_eq3_residual: Option<f64>,
    volume_bound_gap: Option<f64>,
}

impl From<&SweepRecord> for CsvRow {
    fn from(r: &SweepRecord) -> Self {
        CsvRow {
            family: r.family.clone(),
            param: r.param,
            eps: r.eps,
            d_k: r.d_k,
            D_k: r.D_k,
            Delta: r.Delta,
            delta_H: r.delta_H,
            W0: r.W0,
            W1: r.W1,
            r_in: r.r_in,
            R_circ: r.R_circ,
            R_star: r.R_star,
            lemma_eq3_residual: r.lemma_eq3_residual,
            volume_bound_gap: r.volume_bound_gap,
        }
    }
}

impl From<CsvRow> for SweepRecord {
    fn from(r: CsvRow) -> Self {
        SweepRecord {
            family: r.family,
            param: r.param,
            k: None,
            eps: r.eps,
            d_k: r.d_k,
            D_k: r.D_k,
            Delta: r.Delta,
            delta_H: r.delta_H,
            W0: r.W0,
            W1: r.W1,
            r_in: r.r_in,
            R_circ: r.R_circ,
            R_star: r.R_star,
            lemma_eq3_residual: r.lemma_eq3_residual,
            volume_bound_gap: r.volume_bound_gap,
            volume_ratio: None,
            levelset_residual: None,
            perimeter_inner: None,
            perimeter_outer: None,
            hull_excess: None,
            eigen_kind: None,
            eigenvalue: None,
            eigen_error: None,
        }
    }
}

fn io_err(context: String) -> impl FnOnce(std::io::Error) -> Error {
    move |source| Error::Io { context, source }
}

/// CSV of the record columns, missing values as empty cells.
pub fn write_csv<W: Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.serialize(CsvRow::from(r))?;
    }
    w.flush().map_err(io_err("flushing CSV".into()))?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<SweepRecord>> {
    let mut rd = csv::Reader::from_reader(input);
    let headers = rd.headers()?.clone();
    if headers.iter().ne(CSV_COLUMNS.iter().copied()) {
        return Err(Error::arg(format!("unexpected CSV header: {}", headers.iter().collect::<Vec<_>>().join(","))));
    }
    rd.deserialize::<CsvRow>().map(|row| Ok(row?.into())).collect()
}

pub fn write_json<W: Write>(report: &Report, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    out.write_all(b"\n").map_err(io_err("writing JSON".into()))?;
    Ok(())
}

/// Writes records (and, for JSON, verdicts) to `path`.
pub fn export(records: &[SweepRecord], verdicts: &[TheoremVerdict], path: &Path, format: Format) -> Result<()> {
    let file = File::create(path).map_err(io_err(format!("creating {}", path.display())))?;
    let mut out = BufWriter::new(file);
    match format {
        Format::Csv => write_csv(records, &mut out)?,
        Format::Json => {
            let report = Report { records: records.to_vec(), verdicts: verdicts.to_vec() };
            write_json(&report, &mut out)?;
        }
    }
    out.flush().map_err(io_err(format!("writing {}", path.display())))?;
    Ok(())
}

/// Reads records from a CSV or JSON report, chosen by extension.
pub fn load_records(path: &Path) -> Result<Vec<SweepRecord>> {
    let file = File::open(path).map_err(io_err(format!("opening {}", path.display())))?;
    let input = BufReader::new(file);
    match Format::from_path(path) {
        Format::Csv => read_csv(input),
        Format::Json => Ok(serde_json::from_reader::<_, Report>(input)?.records),
    }
}
