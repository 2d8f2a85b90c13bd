//! Command-line front end. Every command returns its exit code; see
//! [`crate::error`] for the meaning of the codes.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use specres_core::diagonal::{symbol_from_homogeneous_kernel, KernelSlice, MatrixSymbol, Symbol};
use specres_core::resolutions::{build_case, CaseName};

use crate::config::{self, parse_count, parse_real, Format, Settings};
use crate::error::{AppError, AppResult, EXIT_PASS, EXIT_TOLERANCE};
use crate::harness::{
    convergence_study, evaluate_parallel, run_all, CaseOutcome, REMAINDER_SHIFTS, XI_PROBE_PAIRS, XI_PROBE_T,
};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "specres", version, about = "Singular integral operators: kernel quadrature against spectral resolutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the cases and probes.
    List,
    /// Evaluate one case on its corpus.
    Verify {
        /// Case id, e.g. FINITE_HILBERT.
        #[arg(value_parser = parse_case)]
        case: CaseName,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Tabulate a built-in symbol as CSV (t, re, im).
    Symbol {
        name: SymbolName,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real, default_value = "0")]
        m: f64,
        #[arg(long, value_parser = parse_ell, default_value = "0")]
        ell: u32,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real, default_value = "1")]
        mass: f64,
    },
    /// Symbol of a homogeneous kernel by Mellin quadrature, against its closed form.
    MellinSymbol {
        kernel: KernelName,
        #[command(flatten)]
        table: TableArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_real, default_value = "0")]
        m: f64,
        /// Node spacing of the quadrature table in t.
        #[arg(long, value_parser = parse_real, default_value = "0.0025")]
        spacing: f64,
    },
    /// Maximum error of one case over a list of grid sizes, as CSV.
    Convergence {
        #[arg(value_parser = parse_case)]
        case: CaseName,
        /// Ascending powers of two.
        #[arg(long, value_delimiter = ',', value_parser = parse_count, default_value = "1024,2048,4096,8192,16384")]
        n_list: Vec<usize>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Every selected case plus the probes, as one aggregate report.
    Report {
        /// Run all six cases (or the `case` list of the config file).
        #[arg(long)]
        all: bool,
        /// Print wall-time to stderr. It never enters the report.
        #[arg(long)]
        timings: bool,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymbolName {
    /// Xi_m(t), needs --m.
    Xi,
    /// phi_l(t), needs --ell.
    Phi,
    /// tanh(pi t / 2).
    TanhPiHalf,
    /// Both diagonal entries of the Dirac resolution.
    DiracDiag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelName {
    Stieltjes,
    Hardy,
    JHankel,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Lower and upper end of the t-range.
    #[arg(long, num_args = 2, allow_hyphen_values = true, value_parser = parse_real, value_names = ["LO", "HI"])]
    pub range: Option<Vec<f64>>,
    #[arg(long, value_parser = parse_count, default_value = "401")]
    pub samples: usize,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// Flat key = value file; flags win over it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
    pub m: Option<f64>,
    #[arg(long, value_parser = parse_ell)]
    pub ell: Option<u32>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_real)]
    pub mass: Option<f64>,
    /// Kernel-side node count.
    #[arg(long, value_parser = parse_count)]
    pub n: Option<usize>,
    /// Half-width of the line grid.
    #[arg(long = "L", value_parser = parse_real)]
    pub l: Option<f64>,
    /// Reach of the log grid.
    #[arg(long = "U", value_parser = parse_real)]
    pub u: Option<f64>,
    #[arg(long, value_parser = parse_real)]
    pub tolerance: Option<f64>,
    /// Evaluate only the first members of the corpus.
    #[arg(long, value_parser = parse_count)]
    pub corpus_size: Option<usize>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn parse_case(s: &str) -> Result<CaseName, String> {
    CaseName::parse(s).ok_or_else(|| {
        format!("unknown case `{s}` (known: {})", CaseName::ALL.map(|c| c.id()).join(", "))
    })
}

fn parse_ell(s: &str) -> Result<u32, String> {
    u32::try_from(parse_count(s)?).map_err(|e| e.to_string())
}

impl RunArgs {
    /// Flags over the config file.
    pub fn settings(&self) -> AppResult<Settings> {
        let file = match &self.config {
            Some(p) => config::load(p)?,
            None => Settings::default(),
        };
        let flags = Settings {
            cases: None,
            m: self.m,
            ell: self.ell,
            a: self.a,
            b: self.b,
            mass: self.mass,
            n: self.n,
            l: self.l,
            u: self.u,
            tolerance: self.tolerance,
            corpus_size: self.corpus_size,
            output: self.output.clone(),
            format: self.format,
            probes: None,
        };
        Ok(flags.over(file))
    }
}

pub fn run(cli: Cli) -> AppResult<i32> {
    match cli.command {
        Command::List => {
            print!("{}", list_text());
            Ok(EXIT_PASS)
        }
        Command::Verify { case, run } => verify(case, &run),
        Command::Symbol { name, table, m, ell, mass } => symbol(name, &table, m, ell, mass),
        Command::MellinSymbol { kernel, table, m, spacing } => mellin_symbol(kernel, &table, m, spacing),
        Command::Convergence { case, n_list, run } => convergence(case, &n_list, &run),
        Command::Report { all, timings, run } => report_all(all, timings, &run),
    }
}

pub fn list_text() -> String {
    let mut s = String::from("cases:\n");
    for c in CaseName::ALL {
        s += &format!("  {:<24} tol {:.0e}  {}\n", c.id(), c.tolerance(), c.identity());
    }
    s += "probes:\n";
    let pairs: Vec<String> = XI_PROBE_PAIRS.iter().map(|(m, mp)| format!("({m}, {mp})")).collect();
    s += &format!(
        "  {:<24} |Xi_m(-t) Xi_m'(t) - exp(-i pi (m - m')/2)| at t = {:?} for {}\n",
        "xi_asymptotics",
        XI_PROBE_T,
        pairs.join(", ")
    );
    s += &format!(
        "  {:<24} |(R_exact - R_simple) psi(. - s)| for s = 0, 2, .., {}\n",
        "compact_remainder",
        2 * (REMAINDER_SHIFTS - 1)
    );
    s
}

fn verify(name: CaseName, run: &RunArgs) -> AppResult<i32> {
    let s = run.settings()?;
    let mut case = build_case(name, s.params(), s.grid())?;
    if let Some(t) = s.tolerance {
        case.tolerance = t;
    }
    let r = evaluate_parallel(&case, s.corpus_size)?;
    let text = match s.format.unwrap_or(Format::Json) {
        Format::Json => report::case_json(&r)?,
        Format::Csv => report::case_csv(&r)?,
    };
    report::emit(s.output.as_deref(), &text)?;
    eprintln!(
        "{} max_error {:.3e} tolerance {:.0e} {}",
        r.case,
        r.max_error,
        r.tolerance,
        if r.pass { "PASS" } else { "FAIL" }
    );
    Ok(if r.pass { EXIT_PASS } else { EXIT_TOLERANCE })
}

fn range_of(table: &TableArgs, default: (f64, f64)) -> AppResult<Vec<f64>> {
    let (lo, hi) = match &table.range {
        Some(r) => (r[0], r[1]),
        None => default,
    };
    if !(hi > lo) {
        return Err(AppError::Usage(format!("--range needs LO < HI, got {lo} {hi}")));
    }
    match table.samples {
        0 => Err(AppError::Usage("--samples must be positive".into())),
        1 => Ok(vec![lo]),
        k => Ok((0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect()),
    }
}

fn csv_table(header: &[&str], rows: impl Iterator<Item = Vec<f64>>) -> AppResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(row.iter().map(|&x| report::fmt(x)))?;
    }
    let bytes = w.into_inner().map_err(|e| AppError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn symbol(name: SymbolName, table: &TableArgs, m: f64, ell: u32, mass: f64) -> AppResult<i32> {
    let ts = range_of(table, (-10.0, 10.0))?;
    let text = match name {
        SymbolName::DiracDiag => {
            if !(mass > 0.0) {
                return Err(AppError::Usage("--mass must be positive".into()));
            }
            let d = MatrixSymbol::diagonal(Symbol::dirac(1.0), Symbol::dirac(-1.0));
            csv_table(
                &["t", "re", "im", "re_22", "im_22"],
                ts.iter().map(|&t| {
                    let e = d.eval(t);
                    vec![t, e[0][0].re, e[0][0].im, e[1][1].re, e[1][1].im]
                }),
            )?
        }
        _ => {
            let sym = match name {
                SymbolName::Xi => {
                    if !(m > -1.0) {
                        return Err(AppError::Usage("--m must be > -1".into()));
                    }
                    Symbol::xi(m)
                }
                SymbolName::Phi => Symbol::phi(ell),
                _ => Symbol::tanh_pi_half(),
            };
            csv_table(&["t", "re", "im"], ts.iter().map(|&t| {
                let v = sym.eval(t);
                vec![t, v.re, v.im]
            }))?
        }
    };
    report::emit(table.out.as_deref(), &text)?;
    Ok(EXIT_PASS)
}

fn mellin_symbol(kernel: KernelName, table: &TableArgs, m: f64, spacing: f64) -> AppResult<i32> {
    let ts = range_of(table, (-5.0, 5.0))?;
    let slice = match kernel {
        KernelName::Stieltjes => KernelSlice::stieltjes(),
        KernelName::Hardy => KernelSlice::hardy(),
        KernelName::JHankel => {
            if !(m >= 0.0) {
                return Err(AppError::Usage("--m must be >= 0 for the Bessel kernel".into()));
            }
            KernelSlice::j_hankel(m)
        }
    };
    let (lo, hi) = (ts[0], *ts.last().unwrap());
    // a one-sample table still needs a non-empty range
    let sym = symbol_from_homogeneous_kernel(&slice, (lo, hi.max(lo + spacing)), spacing)?;
    let closed = slice.closed_form.clone();
    let mut worst: f64 = 0.0;
    let rows: Vec<Vec<f64>> = ts
        .iter()
        .map(|&t| {
            let v = sym.eval(t);
            match &closed {
                Some(c) => {
                    let e = c.eval(t);
                    let d = (v - e).norm();
                    worst = worst.max(d);
                    vec![t, v.re, v.im, e.re, e.im, d]
                }
                None => vec![t, v.re, v.im, f64::NAN, f64::NAN, f64::NAN],
            }
        })
        .collect();
    let text = csv_table(&["t", "re", "im", "closed_re", "closed_im", "abs_diff"], rows.into_iter())?;
    report::emit(table.out.as_deref(), &text)?;
    eprintln!("{} max |closed - quadrature| {:.3e}", slice.name, worst);
    Ok(EXIT_PASS)
}

fn convergence(name: CaseName, n_list: &[usize], run: &RunArgs) -> AppResult<i32> {
    let s = run.settings()?;
    let study = convergence_study(name, s.params(), s.grid(), n_list, s.corpus_size)?;
    report::emit(s.output.as_deref(), &report::convergence_csv(&study)?)?;
    let min = study.min_order().map(|o| format!("{o:.3}")).unwrap_or_else(|| "n/a".into());
    eprintln!("{name} min order {min}{}", if study.monotone { "" } else { " (errors not monotone)" });
    Ok(EXIT_PASS)
}

fn report_all(all: bool, timings: bool, run: &RunArgs) -> AppResult<i32> {
    let s = run.settings()?;
    if !all && s.cases.is_none() {
        return Err(AppError::Usage("report needs --all or a `case` list in the config file".into()));
    }
    let mut rc = s.run_config();
    if all {
        rc.cases = CaseName::ALL.to_vec();
    }
    let start = Instant::now();
    let agg = run_all(&rc);
    let text = match s.format.unwrap_or(Format::Json) {
        Format::Json => report::aggregate_json(&agg)?,
        Format::Csv => report::aggregate_csv(&agg)?,
    };
    report::emit(s.output.as_deref(), &text)?;
    for c in &agg.cases {
        match c {
            CaseOutcome::Report(r) => eprintln!(
                "{:<24} max_error {:.3e} tolerance {:.0e} {}",
                r.case.id(),
                r.max_error,
                r.tolerance,
                if r.pass { "PASS" } else { "FAIL" }
            ),
            CaseOutcome::Failed(f) => eprintln!("{:<24} ERROR {}", f.case.id(), f.message),
        }
    }
    if timings {
        eprintln!("wall time {:.2} s", start.elapsed().as_secs_f64());
    }
    if agg.pass {
        return Ok(EXIT_PASS);
    }
    let failed = agg.cases.iter().find_map(|c| match c {
        CaseOutcome::Failed(f) => Some(f.exit_code),
        _ => None,
    });
    Ok(failed.unwrap_or(EXIT_TOLERANCE))
}

/// Path-free wrapper used by tests: the aggregate JSON for a config text.
pub fn aggregate_for(config_text: &str) -> AppResult<String> {
    let s = config::parse_config(config_text, Path::new("<inline>"))?;
    report::aggregate_json(&run_all(&s.run_config()))
}
