//! Corpus-parallel evaluation, convergence studies and the full run.

use rayon::prelude::*;
use specres_core::resolutions::{
    build_case, compact_remainder_probe, xi_asymptotics_probe, CaseName, CaseParams, GridOverrides, RemainderRow,
    ResolutionCase, VerificationReport, XiRow,
};
use specres_core::{Error, Result};

/// Like [`specres_core::resolutions::evaluate_case`], with members spread
/// over the rayon pool. Rows are collected in corpus order, so the report
/// does not depend on scheduling.
pub fn evaluate_parallel(case: &ResolutionCase, corpus_size: Option<usize>) -> Result<VerificationReport> {
    let (labels, members) = case.corpus_members(corpus_size)?;
    let rows = labels
        .par_iter()
        .zip(members.par_iter())
        .map(|(label, f)| case.evaluate_member(label, f))
        .collect::<Result<Vec<_>>>()?;
    Ok(case.report(labels, &rows))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub max_error: f64,
    /// `log2(err(n/2) / err(n))`; absent on the first row.
    pub order: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    pub case: CaseName,
    pub params: CaseParams,
    pub rows: Vec<ConvergenceRow>,
    /// Errors never increase along the refinement. Reported, not enforced.
    pub monotone: bool,
}

impl ConvergenceStudy {
    /// Smallest per-step order.
    pub fn min_order(&self) -> Option<f64> {
        self.rows.iter().filter_map(|r| r.order).reduce(f64::min)
    }
}

/// Evaluates `name` at each node count of `n_list`, which must be
/// ascending powers of two, keeping the other overrides.
pub fn convergence_study(
    name: CaseName,
    params: CaseParams,
    grid: GridOverrides,
    n_list: &[usize],
    corpus_size: Option<usize>,
) -> Result<ConvergenceStudy> {
    if n_list.is_empty() {
        return Err(Error::InvalidParameter { name: "n_list", reason: "is empty".into() });
    }
    if let Some(&n) = n_list.iter().find(|n| !n.is_power_of_two()) {
        return Err(Error::NotPowerOfTwo { n });
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter { name: "n_list", reason: "must be strictly ascending".into() });
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let case = build_case(name, params, GridOverrides { n: Some(n), ..grid })?;
        let max_error = evaluate_parallel(&case, corpus_size)?.max_error;
        let order = rows.last().map(|prev| (prev.max_error / max_error).log2() / (n as f64 / prev.n as f64).log2());
        rows.push(ConvergenceRow { n, max_error, order });
    }
    let monotone = rows.windows(2).all(|w| w[1].max_error <= w[0].max_error);
    Ok(ConvergenceStudy { case: name, params, rows, monotone })
}

/// What a full run covers.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub cases: Vec<CaseName>,
    pub params: CaseParams,
    pub grid: GridOverrides,
    pub tolerance: Option<f64>,
    pub corpus_size: Option<usize>,
    pub probes: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cases: CaseName::ALL.to_vec(),
            params: CaseParams::default(),
            grid: GridOverrides::default(),
            tolerance: None,
            corpus_size: None,
            probes: true,
        }
    }
}

/// A case that could not be evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseFailure {
    pub case: CaseName,
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CaseOutcome {
    Report(VerificationReport),
    Failed(CaseFailure),
}

impl CaseOutcome {
    pub fn pass(&self) -> bool {
        matches!(self, CaseOutcome::Report(r) if r.pass)
    }
}

/// Sample points of the Xi-product probe.
pub const XI_PROBE_T: [f64; 4] = [10.0, 25.0, 50.0, 100.0];
/// Order pairs of the Xi-product probe.
pub const XI_PROBE_PAIRS: [(f64, f64); 2] = [(0.0, 1.0), (0.5, 2.5)];
/// Shifts `s = 0, 2, ..., 12` of the remainder probe.
pub const REMAINDER_SHIFTS: usize = 7;

#[derive(Debug, Clone, PartialEq)]
pub struct XiProbe {
    pub m: f64,
    pub mp: f64,
    pub rows: Vec<XiRow>,
    /// Distances strictly decrease along the samples.
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RemainderProbe {
    pub rows: Vec<RemainderRow>,
    /// Strictly decreasing from `s = 2` on.
    pub decreasing: bool,
    /// `r(s_max) / r(0)`.
    pub decay: f64,
    pub pass: bool,
}

pub fn xi_probe(m: f64, mp: f64) -> Result<XiProbe> {
    let rows = xi_asymptotics_probe(m, mp, &XI_PROBE_T)?;
    let pass = rows.windows(2).all(|w| w[1].distance < w[0].distance) || rows.iter().all(|r| r.distance < 1e-12);
    Ok(XiProbe { m, mp, rows, pass })
}

pub fn remainder_probe(n_shifts: usize) -> Result<RemainderProbe> {
    let rows = compact_remainder_probe(n_shifts)?;
    let decreasing = rows.iter().skip(1).collect::<Vec<_>>().windows(2).all(|w| w[1].ratio < w[0].ratio);
    let decay = match (rows.first(), rows.last()) {
        (Some(a), Some(b)) => b.ratio / a.ratio,
        _ => f64::NAN,
    };
    Ok(RemainderProbe { rows, decreasing, decay, pass: decreasing && decay < 0.1 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateReport {
    pub cases: Vec<CaseOutcome>,
    pub xi: Vec<XiProbe>,
    pub remainder: Option<RemainderProbe>,
    pub pass: bool,
}

/// Builds and evaluates every selected case, then the probes. Failures are
/// collected; nothing short-circuits. Cases run one after another, members
/// in parallel.
pub fn run_all(config: &RunConfig) -> AggregateReport {
    let cases: Vec<CaseOutcome> = config
        .cases
        .iter()
        .map(|&name| {
            let outcome = build_case(name, config.params, config.grid).and_then(|mut case| {
                if let Some(t) = config.tolerance {
                    case.tolerance = t;
                }
                evaluate_parallel(&case, config.corpus_size)
            });
            match outcome {
                Ok(r) => CaseOutcome::Report(r),
                Err(e) => CaseOutcome::Failed(CaseFailure {
                    case: name,
                    message: e.to_string(),
                    exit_code: crate::error::core_exit_code(&e),
                }),
            }
        })
        .collect();
    let (xi, remainder) = if config.probes {
        let xi = XI_PROBE_PAIRS.iter().filter_map(|&(m, mp)| xi_probe(m, mp).ok()).collect();
        (xi, remainder_probe(REMAINDER_SHIFTS).ok())
    } else {
        (Vec::new(), None)
    };
    let probes_pass = !config.probes
        || (xi.len() == XI_PROBE_PAIRS.len()
            && xi.iter().all(|p: &XiProbe| p.pass)
            && remainder.as_ref().is_some_and(|r| r.pass));
    let pass = cases.iter().all(CaseOutcome::pass) && probes_pass;
    AggregateReport { cases, xi, remainder, pass }
}
