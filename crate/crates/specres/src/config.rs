//! Flat `key = value` configuration. Keys mirror the command-line flags;
//! flags win over the file. `#` starts a comment.

use std::path::{Path, PathBuf};

use specres_core::resolutions::{CaseName, CaseParams, GridOverrides};

use crate::error::{AppError, AppResult};
use crate::harness::RunConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Every setting a run can take, all optional.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings {
    pub cases: Option<Vec<CaseName>>,
    pub m: Option<f64>,
    pub ell: Option<u32>,
    pub a: Option<f64>,
    pub b: Option<f64>,
    pub mass: Option<f64>,
    pub n: Option<usize>,
    pub l: Option<f64>,
    pub u: Option<f64>,
    pub tolerance: Option<f64>,
    pub corpus_size: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub probes: Option<bool>,
}

pub const KEYS: [&str; 14] =
    ["case", "m", "ell", "a", "b", "mass", "n", "L", "U", "tolerance", "corpus_size", "output", "format", "probes"];

impl Settings {
    /// `self` where set, `lower` otherwise.
    pub fn over(self, lower: Settings) -> Settings {
        Settings {
            cases: self.cases.or(lower.cases),
            m: self.m.or(lower.m),
            ell: self.ell.or(lower.ell),
            a: self.a.or(lower.a),
            b: self.b.or(lower.b),
            mass: self.mass.or(lower.mass),
            n: self.n.or(lower.n),
            l: self.l.or(lower.l),
            u: self.u.or(lower.u),
            tolerance: self.tolerance.or(lower.tolerance),
            corpus_size: self.corpus_size.or(lower.corpus_size),
            output: self.output.or(lower.output),
            format: self.format.or(lower.format),
            probes: self.probes.or(lower.probes),
        }
    }

    pub fn params(&self) -> CaseParams {
        let d = CaseParams::default();
        CaseParams {
            m: self.m.unwrap_or(d.m),
            ell: self.ell.unwrap_or(d.ell),
            a: self.a.unwrap_or(d.a),
            b: self.b.unwrap_or(d.b),
            mass: self.mass.unwrap_or(d.mass),
        }
    }

    pub fn grid(&self) -> GridOverrides {
        GridOverrides { n: self.n, l: self.l, u: self.u }
    }

    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            cases: self.cases.clone().unwrap_or_else(|| CaseName::ALL.to_vec()),
            params: self.params(),
            grid: self.grid(),
            tolerance: self.tolerance,
            corpus_size: self.corpus_size,
            probes: self.probes.unwrap_or(true),
        }
    }
}

/// Decimal with optional exponent.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

/// A non-negative integer, also written as `1e4` or `2^14`.
pub fn parse_count(s: &str) -> Result<usize, String> {
    let s = s.trim();
    if let Some((base, exp)) = s.split_once('^') {
        let (base, exp): (usize, u32) = (
            base.trim().parse().map_err(|_| format!("`{s}` is not a count"))?,
            exp.trim().parse().map_err(|_| format!("`{s}` is not a count"))?,
        );
        return base.checked_pow(exp).ok_or_else(|| format!("`{s}` overflows"));
    }
    let v = parse_real(s)?;
    if v < 0.0 || v.fract() != 0.0 || v > u32::MAX as f64 {
        return Err(format!("`{s}` is not a count"));
    }
    Ok(v as usize)
}

/// Comma-separated case ids, or `all`.
pub fn parse_cases(s: &str) -> Result<Vec<CaseName>, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(CaseName::ALL.to_vec());
    }
    s.split(',').map(|c| CaseName::parse(c).ok_or_else(|| format!("unknown case `{}`", c.trim()))).collect()
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("`{s}` is not a boolean")),
    }
}

pub fn parse_config(text: &str, path: &Path) -> AppResult<Settings> {
    let mut s = Settings::default();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |message: String| AppError::Config { path: path.to_path_buf(), line: k + 1, message };
        let (key, value) = line.split_once('=').ok_or_else(|| fail("expected `key = value`".into()))?;
        let (key, value) = (key.trim(), value.trim());
        let r: Result<(), String> = (|| {
            match key {
                "case" | "cases" => s.cases = Some(parse_cases(value)?),
                "m" => s.m = Some(parse_real(value)?),
                "ell" => s.ell = Some(u32::try_from(parse_count(value)?).map_err(|e| e.to_string())?),
                "a" => s.a = Some(parse_real(value)?),
                "b" => s.b = Some(parse_real(value)?),
                "mass" => s.mass = Some(parse_real(value)?),
                "n" => s.n = Some(parse_count(value)?),
                "L" => s.l = Some(parse_real(value)?),
                "U" => s.u = Some(parse_real(value)?),
                "tolerance" => s.tolerance = Some(parse_real(value)?),
                "corpus_size" => s.corpus_size = Some(parse_count(value)?),
                "output" => s.output = Some(PathBuf::from(value)),
                "format" => {
                    s.format = Some(match value {
                        "json" => Format::Json,
                        "csv" => Format::Csv,
                        _ => return Err(format!("unknown format `{value}`")),
                    })
                }
                "probes" => s.probes = Some(parse_bool(value)?),
                _ => return Err(format!("unknown key `{key}` (known: {})", KEYS.join(", "))),
            }
            Ok(())
        })();
        r.map_err(fail)?;
    }
    Ok(s)
}

pub fn load(path: &Path) -> AppResult<Settings> {
    let text = std::fs::read_to_string(path).map_err(|source| AppError::Io { path: path.to_path_buf(), source })?;
    parse_config(&text, path)
}
