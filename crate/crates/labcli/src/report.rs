use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::Mode;
use crate::error::{LabError, LabResult};
use crate::run::{Row, RunReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Self::Csv),
            "json" => Some(Self::Json),
            _ => None,
        }
    }
}

/// 17 significant digits.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn csv_header(columns: &[String]) -> String {
    let mut line = String::from("time");
    for c in columns {
        line.push(',');
        line.push_str(c);
    }
    line.push_str(",survival,mode\n");
    line
}

pub fn rows_to_csv<'a>(columns: &[String], rows: impl IntoIterator<Item = &'a Row>) -> String {
    let mut out = csv_header(columns);
    for r in rows {
        out.push_str(&num(r.time));
        for v in &r.values {
            out.push(',');
            out.push_str(&num(*v));
        }
        let _ = writeln!(out, ",{},{}", num(r.survival), r.mode);
    }
    out
}

pub fn diff_to_csv(report: &RunReport) -> String {
    let mut out = String::from("time,effective,qzd\n");
    for d in &report.diff {
        let _ = writeln!(out, "{},{},{}", num(d.time), num(d.effective), num(d.qzd));
    }
    out
}

#[derive(Serialize)]
struct JsonView<'a> {
    metadata: &'a crate::run::Metadata,
    columns: &'a [String],
    rows: &'a [Row],
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    diff: &'a [crate::run::DiffRow],
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    final_states: &'a [crate::run::FinalState],
}

pub fn to_json(report: &RunReport) -> String {
    let view = JsonView {
        metadata: &report.metadata,
        columns: &report.columns,
        rows: &report.rows,
        diff: &report.diff,
        final_states: &report.final_states,
    };
    let mut s = serde_json::to_string_pretty(&view).expect("report serializes");
    s.push('\n');
    s
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut name = stem.as_os_str().to_owned();
    name.push(suffix);
    PathBuf::from(name)
}

fn write(path: PathBuf, text: &str) -> LabResult<PathBuf> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| LabError::io(dir, e))?;
    }
    std::fs::write(&path, text).map_err(|e| LabError::io(&path, e))?;
    Ok(path)
}

/// Writes the report next to `stem` and returns the paths written.
///
/// CSV output of a compare run is split into `<stem>.exact.csv`,
/// `<stem>.effective.csv`, `<stem>.qzd.csv` and `<stem>.diff.csv`; other
/// runs write `<stem>.csv`. JSON output is always a single `<stem>.json`.
pub fn emit_report(report: &RunReport, stem: &Path, format: Format) -> LabResult<Vec<PathBuf>> {
    match format {
        Format::Json => Ok(vec![write(with_suffix(stem, ".json"), &to_json(report))?]),
        Format::Csv => {
            let modes = report.modes();
            if modes.len() <= 1 && report.diff.is_empty() {
                return Ok(vec![write(with_suffix(stem, ".csv"), &rows_to_csv(&report.columns, &report.rows))?]);
            }
            let mut paths = Vec::new();
            for mode in [Mode::Exact, Mode::Effective, Mode::Qzd, Mode::Trajectories] {
                if modes.contains(&mode) {
                    let text = rows_to_csv(&report.columns, report.rows_for(mode));
                    paths.push(write(with_suffix(stem, &format!(".{mode}.csv")), &text)?);
                }
            }
            paths.push(write(with_suffix(stem, ".diff.csv"), &diff_to_csv(report))?);
            Ok(paths)
        }
    }
}
