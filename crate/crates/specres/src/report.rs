//! JSON and CSV renderings of reports, and atomic file output.
//!
//! Nothing time- or host-dependent is serialized, so equal inputs give
//! byte-identical files.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use specres_core::resolutions::{GridInfo, VerificationReport};

use crate::error::{AppError, AppResult};
use crate::harness::{AggregateReport, CaseOutcome, ConvergenceStudy, RemainderProbe, XiProbe};

pub const SCHEMA: &str = "specres-report/1";

#[derive(Debug, Serialize)]
pub struct GridJson {
    pub kind: &'static str,
    pub n: usize,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line_n: Option<usize>,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none")]
    pub u: Option<[f64; 2]>,
}

impl From<&GridInfo> for GridJson {
    fn from(g: &GridInfo) -> Self {
        GridJson { kind: g.kind, n: g.n, l: g.l, line_n: g.line_n, u: g.u.map(|(a, b)| [a, b]) }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckJson {
    pub label: String,
    pub errors: Vec<f64>,
    pub max_error: f64,
}

#[derive(Debug, Serialize)]
pub struct CaseJson {
    pub case: &'static str,
    pub params: BTreeMap<&'static str, f64>,
    pub grid: GridJson,
    pub corpus: Vec<String>,
    pub checks: Vec<CheckJson>,
    pub errors: Vec<f64>,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl From<&VerificationReport> for CaseJson {
    fn from(r: &VerificationReport) -> Self {
        CaseJson {
            case: r.case.id(),
            params: r.params.iter().cloned().collect(),
            grid: (&r.grid).into(),
            corpus: r.corpus.clone(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckJson { label: c.label.clone(), errors: c.errors.clone(), max_error: c.max_error })
                .collect(),
            errors: r.errors.clone(),
            max_error: r.max_error,
            tolerance: r.tolerance,
            pass: r.pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FailureJson {
    pub case: &'static str,
    pub error: String,
    pub exit_code: i32,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum OutcomeJson {
    Report(CaseJson),
    Failed(FailureJson),
}

#[derive(Debug, Serialize)]
pub struct XiRowJson {
    pub t: f64,
    pub re: f64,
    pub im: f64,
    pub limit_re: f64,
    pub limit_im: f64,
    pub distance: f64,
}

#[derive(Debug, Serialize)]
pub struct XiProbeJson {
    pub probe: &'static str,
    pub m: f64,
    pub mp: f64,
    pub rows: Vec<XiRowJson>,
    pub pass: bool,
}

impl From<&XiProbe> for XiProbeJson {
    fn from(p: &XiProbe) -> Self {
        XiProbeJson {
            probe: "xi_asymptotics",
            m: p.m,
            mp: p.mp,
            rows: p
                .rows
                .iter()
                .map(|r| XiRowJson {
                    t: r.t,
                    re: r.value.re,
                    im: r.value.im,
                    limit_re: r.limit.re,
                    limit_im: r.limit.im,
                    distance: r.distance,
                })
                .collect(),
            pass: p.pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RemainderJson {
    pub probe: &'static str,
    pub shifts: Vec<f64>,
    pub ratios: Vec<f64>,
    pub decreasing: bool,
    pub decay: f64,
    pub pass: bool,
}

impl From<&RemainderProbe> for RemainderJson {
    fn from(p: &RemainderProbe) -> Self {
        RemainderJson {
            probe: "compact_remainder",
            shifts: p.rows.iter().map(|r| r.shift).collect(),
            ratios: p.rows.iter().map(|r| r.ratio).collect(),
            decreasing: p.decreasing,
            decay: p.decay,
            pass: p.pass,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AggregateJson {
    pub schema: &'static str,
    pub cases: Vec<OutcomeJson>,
    pub probes: ProbesJson,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct ProbesJson {
    pub xi_asymptotics: Vec<XiProbeJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compact_remainder: Option<RemainderJson>,
}

impl From<&AggregateReport> for AggregateJson {
    fn from(a: &AggregateReport) -> Self {
        AggregateJson {
            schema: SCHEMA,
            cases: a
                .cases
                .iter()
                .map(|c| match c {
                    CaseOutcome::Report(r) => OutcomeJson::Report(r.into()),
                    CaseOutcome::Failed(f) => OutcomeJson::Failed(FailureJson {
                        case: f.case.id(),
                        error: f.message.clone(),
                        exit_code: f.exit_code,
                        pass: false,
                    }),
                })
                .collect(),
            probes: ProbesJson {
                xi_asymptotics: a.xi.iter().map(Into::into).collect(),
                compact_remainder: a.remainder.as_ref().map(Into::into),
            },
            pass: a.pass,
        }
    }
}

/// A single case as a standalone document.
#[derive(Debug, Serialize)]
pub struct SingleJson {
    pub schema: &'static str,
    #[serde(flatten)]
    pub case: CaseJson,
}

pub fn case_json(r: &VerificationReport) -> AppResult<String> {
    Ok(serde_json::to_string_pretty(&SingleJson { schema: SCHEMA, case: r.into() })? + "\n")
}

pub fn aggregate_json(a: &AggregateReport) -> AppResult<String> {
    Ok(serde_json::to_string_pretty(&AggregateJson::from(a))? + "\n")
}

fn csv_string(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> AppResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w)?;
    let bytes = w.into_inner().map_err(|e| AppError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// One row per corpus member: label, worst error, then one column per check.
pub fn case_csv(r: &VerificationReport) -> AppResult<String> {
    csv_string(|w| {
        let mut header = vec!["case".to_string(), "member".into(), "error".into()];
        header.extend(r.checks.iter().map(|c| c.label.clone()));
        w.write_record(&header)?;
        for (i, label) in r.corpus.iter().enumerate() {
            let mut row = vec![r.case.id().to_string(), label.clone(), fmt(r.errors[i])];
            row.extend(r.checks.iter().map(|c| fmt(c.errors[i])));
            w.write_record(&row)?;
        }
        Ok(())
    })
}

/// One row per case: id, max error, tolerance, pass.
pub fn aggregate_csv(a: &AggregateReport) -> AppResult<String> {
    csv_string(|w| {
        w.write_record(["case", "max_error", "tolerance", "pass", "error"])?;
        for c in &a.cases {
            match c {
                CaseOutcome::Report(r) => w.write_record([
                    r.case.id(),
                    &fmt(r.max_error),
                    &fmt(r.tolerance),
                    if r.pass { "true" } else { "false" },
                    "",
                ])?,
                CaseOutcome::Failed(f) => w.write_record([f.case.id(), "", "", "false", &f.message])?,
            }
        }
        Ok(())
    })
}

pub fn convergence_csv(s: &ConvergenceStudy) -> AppResult<String> {
    csv_string(|w| {
        w.write_record(["n", "max_error", "order"])?;
        for r in &s.rows {
            w.write_record([r.n.to_string(), fmt(r.max_error), r.order.map(fmt).unwrap_or_default()])?;
        }
        Ok(())
    })
}

/// Shortest round-trip decimal, `.` separator, no locale.
pub fn fmt(x: f64) -> String {
    format!("{x:e}")
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> AppResult<()> {
    let io = |source| AppError::Io { path: path.to_path_buf(), source };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

/// Writes to `path`, or to stdout when there is none.
pub fn emit(path: Option<&Path>, contents: &str) -> AppResult<()> {
    match path {
        Some(p) => write_atomic(p, contents),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| AppError::Io { path: "<stdout>".into(), source })
        }
    }
}
