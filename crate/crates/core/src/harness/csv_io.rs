use std::io::Write;
use std::path::Path;

use super::experiment::{ExperimentReport, PointReport};
use crate::decoding::Decision;
use crate::error::{Error, Result};

pub const SUMMARY_HEADER: [&str; 9] = [
    "sweep_value",
    "trials",
    "mse",
    "mse_ci_lo",
    "mse_ci_hi",
    "pd",
    "pd_ci_lo",
    "pd_ci_hi",
    "wall_ms",
];

pub const DETAIL_HEADER: [&str; 8] = [
    "trial",
    "true_x",
    "true_y",
    "est_x",
    "est_y",
    "sq_err",
    "region_correct",
    "region_trace",
];

/// One parsed summary line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummaryRow {
    pub sweep_value: f64,
    pub trials: usize,
    pub mse: f64,
    pub mse_ci: (f64, f64),
    pub pd: f64,
    pub pd_ci: (f64, f64),
    pub wall_ms: f64,
}

impl From<&PointReport> for SummaryRow {
    fn from(p: &PointReport) -> Self {
        SummaryRow {
            sweep_value: p.sweep_value,
            trials: p.trials,
            mse: p.mse,
            mse_ci: p.mse_ci,
            pd: p.pd,
            pd_ci: p.pd_ci,
            wall_ms: p.wall_ms,
        }
    }
}

impl SummaryRow {
    fn fields(&self) -> [String; 9] {
        [
            self.sweep_value.to_string(),
            self.trials.to_string(),
            self.mse.to_string(),
            self.mse_ci.0.to_string(),
            self.mse_ci.1.to_string(),
            self.pd.to_string(),
            self.pd_ci.0.to_string(),
            self.pd_ci.1.to_string(),
            self.wall_ms.to_string(),
        ]
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io.to_string()),
        other => Error::Parse(format!("{other:?}")),
    }
}

pub fn write_summary<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record(r.fields()).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Header plus one line per sweep point.
pub fn emit_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let rows: Vec<SummaryRow> = report.points.iter().map(SummaryRow::from).collect();
    write_summary(&rows, std::fs::File::create(path)?)
}

/// Likelihood-baseline series in the summary layout, with `pd` columns set to NaN.
pub fn emit_mle_csv(report: &ExperimentReport, path: &Path) -> Result<()> {
    let rows: Vec<SummaryRow> = report
        .points
        .iter()
        .filter_map(|p| {
            p.mle_mse.map(|(mse, ci)| SummaryRow {
                sweep_value: p.sweep_value,
                trials: p.trials,
                mse,
                mse_ci: ci,
                pd: f64::NAN,
                pd_ci: (f64::NAN, f64::NAN),
                wall_ms: p.wall_ms,
            })
        })
        .collect();
    write_summary(&rows, std::fs::File::create(path)?)
}

pub fn read_summary<R: std::io::Read>(input: R) -> Result<Vec<SummaryRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(SUMMARY_HEADER) {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let num = |s: &str| s.parse::<f64>().map_err(|e| Error::Parse(format!("{s}: {e}")));
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        rows.push(SummaryRow {
            sweep_value: num(&rec[0])?,
            trials: rec[1].parse().map_err(|e| Error::Parse(format!("{}: {e}", &rec[1])))?,
            mse: num(&rec[2])?,
            mse_ci: (num(&rec[3])?, num(&rec[4])?),
            pd: num(&rec[5])?,
            pd_ci: (num(&rec[6])?, num(&rec[7])?),
            wall_ms: num(&rec[8])?,
        });
    }
    Ok(rows)
}

pub fn parse_csv(path: &Path) -> Result<Vec<SummaryRow>> {
    read_summary(std::fs::File::open(path)?)
}

/// `2-0-3` for single decisions, `0+1/2+3` for kept pairs.
pub fn format_trace(trace: &[Decision]) -> String {
    let parts: Vec<String> = trace
        .iter()
        .map(|d| match d {
            Decision::Single(j) => j.to_string(),
            Decision::Pair(a, b) => format!("{a}+{b}"),
        })
        .collect();
    let sep = if trace.iter().any(|d| matches!(d, Decision::Pair(..))) {
        "/"
    } else {
        "-"
    };
    parts.join(sep)
}

/// Per-trial file for one sweep point; needs records kept in the report.
pub fn emit_detail(point: &PointReport, path: &Path) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(DETAIL_HEADER).map_err(csv_err)?;
    for r in &point.records {
        w.write_record([
            r.trial.to_string(),
            r.target.x.to_string(),
            r.target.y.to_string(),
            r.estimate.x.to_string(),
            r.estimate.y.to_string(),
            r.sq_err.to_string(),
            (r.region_correct as u8).to_string(),
            format_trace(&r.region_trace),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
