//! The six operator identities as executable cases, plus the two probes.
//!
//! A case pairs kernel-side operators (quadrature, with the unitary changes
//! of representation applied) with spectral-side operators (multipliers of
//! `A` or `D`) acting on the same representation space. Evaluating a case
//! on a corpus member `f` reports `|lhs f - rhs f| / |f|` for every check.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::corpus::{bump, make_corpus, CorpusSpec};
use crate::diagonal::{FourierEngine, MatrixSymbol, MellinEngine, Symbol};
use crate::error::invalid;
use crate::grids::{Field, Grid, GridFunction, IntervalGrid, LogGrid, Measure, SplitGrid, UniformGrid};
use crate::kernels::{
    dirac_kernel, even_odd_split, finite_hilbert, hilbert_pv, inversion_j, rescale_interval, rescale_pm2,
    rescale_sigma, weighted_finite_hilbert, HankelOperator, IntervalMap, T3dOperator,
};
use crate::specfun::{b_minus, b_plus, xi_product, xi_product_limit};
use crate::{Error, Result, C64};

/// Tolerance of the cases whose both sides are Fourier-side computations.
pub const FOURIER_TOLERANCE: f64 = 1e-5;
/// Tolerance of the cases with oscillatory quadrature on one side.
pub const OSCILLATORY_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseName {
    HilbertEvenOdd,
    HankelJxi,
    T3d,
    FiniteHilbert,
    WeightedFiniteHilbert,
    DiracUpsideDown,
}

impl CaseName {
    pub const ALL: [CaseName; 6] = [
        CaseName::HilbertEvenOdd,
        CaseName::HankelJxi,
        CaseName::T3d,
        CaseName::FiniteHilbert,
        CaseName::WeightedFiniteHilbert,
        CaseName::DiracUpsideDown,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            CaseName::HilbertEvenOdd => "HILBERT_EVEN_ODD",
            CaseName::HankelJxi => "HANKEL_JXI",
            CaseName::T3d => "T3D",
            CaseName::FiniteHilbert => "FINITE_HILBERT",
            CaseName::WeightedFiniteHilbert => "WEIGHTED_FINITE_HILBERT",
            CaseName::DiracUpsideDown => "DIRAC_UPSIDE_DOWN",
        }
    }

    /// Case-insensitive parse of [`CaseName::id`].
    pub fn parse(s: &str) -> Option<CaseName> {
        CaseName::ALL.iter().copied().find(|c| c.id().eq_ignore_ascii_case(s.trim()))
    }

    /// The identity the case verifies, in one line.
    pub fn identity(&self) -> &'static str {
        match self {
            CaseName::HilbertEvenOdd => {
                "U H U* = -i [[0, tanh(pi A) - i sech(pi A)], [tanh(pi A) + i sech(pi A), 0]] on L2(R+; C2)"
            }
            CaseName::HankelJxi => "J H_m = Xi_m(A), H_m J = Xi_m(-A), H_m H_m = 1 on L2(R+)",
            CaseName::T3d => "T_l = phi_l(A) on L2(R+, r^2 dr)",
            CaseName::FiniteHilbert => "U H_(a,b) U* = -i tanh(pi D / 2) on L2(R)",
            CaseName::WeightedFiniteHilbert => {
                "U R U* = -1/2 [b+(X) tanh(pi D) b+(X)^-1 - i b-(X) sech(pi D) b+(X)^-1] on L2(R)"
            }
            CaseName::DiracUpsideDown => {
                "U K U* = i diag(tanh(2 pi D) + i sech(2 pi D), tanh(2 pi D) - i sech(2 pi D)) on L2(R; C2)"
            }
        }
    }

    pub fn tolerance(&self) -> f64 {
        match self {
            CaseName::HilbertEvenOdd | CaseName::FiniteHilbert => FOURIER_TOLERANCE,
            _ => OSCILLATORY_TOLERANCE,
        }
    }
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Parameters of the case families; each case reads the ones it needs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseParams {
    /// Hankel order.
    pub m: f64,
    /// Angular momentum of the 3D case.
    pub ell: u32,
    /// Endpoints of the finite interval.
    pub a: f64,
    pub b: f64,
    /// Dirac mass.
    pub mass: f64,
}

impl Default for CaseParams {
    fn default() -> Self {
        CaseParams { m: 0.5, ell: 0, a: 0.0, b: 1.0, mass: 1.0 }
    }
}

impl CaseParams {
    fn validate(&self, name: CaseName) -> Result<()> {
        match name {
            CaseName::HankelJxi if !(self.m > -1.0) || !self.m.is_finite() => {
                Err(invalid("m", "Hankel order must be a real number > -1"))
            }
            CaseName::FiniteHilbert if !(self.b > self.a) || !self.a.is_finite() || !self.b.is_finite() => {
                Err(invalid("interval", "need finite a < b"))
            }
            CaseName::DiracUpsideDown if !(self.mass > 0.0) || !self.mass.is_finite() => {
                Err(invalid("mass", "must be a positive real number"))
            }
            _ => Ok(()),
        }
    }

    /// The parameters `name` depends on, for reports.
    pub fn relevant(&self, name: CaseName) -> Vec<(&'static str, f64)> {
        match name {
            CaseName::HilbertEvenOdd | CaseName::WeightedFiniteHilbert => Vec::new(),
            CaseName::HankelJxi => vec![("m", self.m)],
            CaseName::T3d => vec![("ell", self.ell as f64)],
            CaseName::FiniteHilbert => vec![("a", self.a), ("b", self.b)],
            CaseName::DiracUpsideDown => vec![("mass", self.mass)],
        }
    }
}

/// Grid overrides. `n` is the kernel-side node count; `l` the half-width
/// of the auxiliary line grid; `u` the reach of the log grid (`[-u, u]`
/// for the Hankel case, the lower end `-u` otherwise).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct GridOverrides {
    pub n: Option<usize>,
    pub l: Option<f64>,
    pub u: Option<f64>,
}

/// Grid metadata carried into reports.
#[derive(Debug, Clone, PartialEq)]
pub struct GridInfo {
    /// Kind of the grid the corpus lives on.
    pub kind: &'static str,
    /// Node count of that grid.
    pub n: usize,
    /// Half-width of the line grid, when one is used.
    pub l: Option<f64>,
    /// Node count of the line grid, when one is used.
    pub line_n: Option<usize>,
    /// `(u_lo, u_hi)` of the log grid, when one is used.
    pub u: Option<(f64, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Kernel,
    Spectral,
}

/// Which generator a multiplier is a function of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Dilation,
    Momentum,
}

type OpFn = Arc<dyn Fn(&Field) -> Result<Field> + Send + Sync>;

/// A named linear operator on corpus fields.
#[derive(Clone)]
pub struct OperatorHandle {
    pub name: String,
    pub side: Side,
    op: OpFn,
}

impl OperatorHandle {
    pub fn new(
        name: impl Into<String>,
        side: Side,
        op: impl Fn(&Field) -> Result<Field> + Send + Sync + 'static,
    ) -> Self {
        OperatorHandle { name: name.into(), side, op: Arc::new(op) }
    }

    pub fn apply(&self, f: &Field) -> Result<Field> {
        (self.op)(f)
    }
}

impl fmt::Debug for OperatorHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OperatorHandle").field("name", &self.name).field("side", &self.side).finish()
    }
}

/// One asserted equality `lhs = rhs`, optionally restricted to one
/// component of pair-valued output.
#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub lhs: usize,
    pub rhs: usize,
    pub component: Option<usize>,
}

/// One entry of the spectral side, for display.
#[derive(Debug, Clone)]
pub struct NamedSymbol {
    pub role: String,
    pub generator: Generator,
    pub symbol: Symbol,
}

/// A fully wired identity. Immutable once built.
#[derive(Debug, Clone)]
pub struct ResolutionCase {
    pub name: CaseName,
    pub params: CaseParams,
    pub grid: GridInfo,
    /// Grid the corpus is sampled on.
    pub source: Grid,
    pub corpus: CorpusSpec,
    pub operators: Vec<OperatorHandle>,
    pub checks: Vec<Check>,
    pub symbols: Vec<NamedSymbol>,
    pub tolerance: f64,
}

impl ResolutionCase {
    /// Samples the corpus, truncated to the first `size` members.
    pub fn corpus_members(&self, size: Option<usize>) -> Result<(Vec<String>, Vec<Field>)> {
        let mut labels = self.corpus.labels();
        let mut members = make_corpus(&self.corpus, self.source)?;
        if let Some(k) = size {
            labels.truncate(k);
            members.truncate(k);
        }
        Ok((labels, members))
    }

    /// Errors of every check on one member, in check order. Failures carry
    /// the member label.
    pub fn evaluate_member(&self, label: &str, f: &Field) -> Result<Vec<f64>> {
        self.errors_of(f).map_err(|e| Error::Member { member: label.to_string(), source: Box::new(e) })
    }

    fn errors_of(&self, f: &Field) -> Result<Vec<f64>> {
        let norm = f.norm();
        let mut outputs: Vec<Option<Field>> = vec![None; self.operators.len()];
        let mut errors = Vec::with_capacity(self.checks.len());
        for check in &self.checks {
            for k in [check.lhs, check.rhs] {
                if outputs[k].is_none() {
                    outputs[k] = Some(self.operators[k].apply(f)?);
                }
            }
            let (l, r) = (outputs[check.lhs].as_ref().unwrap(), outputs[check.rhs].as_ref().unwrap());
            let d = match check.component {
                None => l.distance(r)?,
                Some(c) => {
                    let (l, r) = (l.as_pair()?, r.as_pair()?);
                    if c == 0 {
                        l.first.distance(&r.first)?
                    } else {
                        l.second.distance(&r.second)?
                    }
                }
            };
            errors.push(d / norm);
        }
        Ok(errors)
    }

    /// Assembles a report from per-member error rows as returned by
    /// [`ResolutionCase::evaluate_member`].
    pub fn report(&self, labels: Vec<String>, rows: &[Vec<f64>]) -> VerificationReport {
        let checks = self
            .checks
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let errors: Vec<f64> = rows.iter().map(|r| r[k]).collect();
                CheckErrors { label: c.label.clone(), max_error: max_of(&errors), errors }
            })
            .collect();
        let errors: Vec<f64> = rows.iter().map(|r| max_of(r)).collect();
        let max_error = max_of(&errors);
        VerificationReport {
            case: self.name,
            params: self.params.relevant(self.name),
            grid: self.grid.clone(),
            corpus: labels,
            checks,
            errors,
            max_error,
            tolerance: self.tolerance,
            pass: max_error <= self.tolerance,
        }
    }
}

fn max_of(xs: &[f64]) -> f64 {
    // NaN propagates so that a broken member cannot pass
    xs.iter().fold(0.0, |m, &x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckErrors {
    pub label: String,
    pub errors: Vec<f64>,
    pub max_error: f64,
}

/// Outcome of one case. `errors[i]` is the worst check on member `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub case: CaseName,
    pub params: Vec<(&'static str, f64)>,
    pub grid: GridInfo,
    pub corpus: Vec<String>,
    pub checks: Vec<CheckErrors>,
    pub errors: Vec<f64>,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Sequential evaluation over the first `corpus_size` members.
pub fn evaluate_case(case: &ResolutionCase, corpus_size: Option<usize>) -> Result<VerificationReport> {
    let (labels, members) = case.corpus_members(corpus_size)?;
    let rows = labels.iter().zip(&members).map(|(l, f)| case.evaluate_member(l, f)).collect::<Result<Vec<_>>>()?;
    Ok(case.report(labels, &rows))
}

struct Builder {
    operators: Vec<OperatorHandle>,
    checks: Vec<Check>,
}

impl Builder {
    fn new() -> Self {
        Builder { operators: Vec::new(), checks: Vec::new() }
    }

    fn op(&mut self, name: &str, side: Side, op: impl Fn(&Field) -> Result<Field> + Send + Sync + 'static) -> usize {
        self.operators.push(OperatorHandle::new(name, side, op));
        self.operators.len() - 1
    }

    fn check(&mut self, lhs: usize, rhs: usize, component: Option<usize>) {
        let mut label = format!("{} = {}", self.operators[lhs].name, self.operators[rhs].name);
        if let Some(c) = component {
            label = format!("{label} [component {}]", c + 1);
        }
        self.checks.push(Check { label, lhs, rhs, component });
    }
}

fn named(role: &str, generator: Generator, symbol: Symbol) -> NamedSymbol {
    NamedSymbol { role: role.into(), generator, symbol }
}

/// Default kernel-side node count.
pub const DEFAULT_N: usize = 1 << 14;

/// Wires the case `name` at `params` on the default grids, as modified by
/// `grid`.
pub fn build_case(name: CaseName, params: CaseParams, grid: GridOverrides) -> Result<ResolutionCase> {
    params.validate(name)?;
    let n = grid.n.unwrap_or(DEFAULT_N);
    let (builder, source, info, corpus, symbols) = match name {
        CaseName::HilbertEvenOdd => hilbert_even_odd(n, grid)?,
        CaseName::HankelJxi => hankel_jxi(params.m, n, grid)?,
        CaseName::T3d => t3d(params.ell, n, grid)?,
        CaseName::FiniteHilbert => finite(params.a, params.b, n, grid)?,
        CaseName::WeightedFiniteHilbert => weighted(n, grid)?,
        CaseName::DiracUpsideDown => dirac(params.mass, n, grid)?,
    };
    Ok(ResolutionCase {
        name,
        params,
        grid: info,
        source,
        corpus,
        operators: builder.operators,
        checks: builder.checks,
        symbols,
        tolerance: name.tolerance(),
    })
}

type Parts = (Builder, Grid, GridInfo, CorpusSpec, Vec<NamedSymbol>);

fn scalar(f: &Field) -> Result<&GridFunction> {
    f.as_scalar()
}

fn hilbert_even_odd(n: usize, grid: GridOverrides) -> Result<Parts> {
    let l = grid.l.unwrap_or(16.0);
    let reach = grid.u.unwrap_or(40.0);
    let line = UniformGrid::centered(l, n)?;
    // the resampled pair stays four cells clear of the line grid's edge
    let log = LogGrid::new(-reach, (l - 4.0 * line.dx).ln(), n)?;
    let log_grid = Grid::Log(log);
    let fourier = Arc::new(FourierEngine::new(line, 2)?);
    let mellin = Arc::new(MellinEngine::new(log, Measure::Lebesgue, 2)?);
    let matrix = MatrixSymbol::even_odd_hilbert();

    let mut b = Builder::new();
    let pv = b.op("U Hpv", Side::Kernel, move |f| Ok(even_odd_split(&hilbert_pv(scalar(f)?)?, log_grid)?.into()));
    let sign = {
        let fourier = fourier.clone();
        b.op("U (-i sign D)", Side::Spectral, move |f| {
            let h = fourier.apply(&Symbol::hilbert(), scalar(f)?)?;
            Ok(even_odd_split(&h, log_grid)?.into())
        })
    };
    let rhs = {
        let matrix = matrix.clone();
        b.op("M(A) U", Side::Spectral, move |f| {
            Ok(mellin.apply_matrix(&matrix, &even_odd_split(scalar(f)?, log_grid)?)?.into())
        })
    };
    b.check(pv, rhs, None);
    b.check(sign, rhs, None);
    b.check(pv, sign, None);

    let [[m11, m12], [m21, m22]] = matrix.entries;
    let symbols = vec![
        named("11", Generator::Dilation, m11),
        named("12", Generator::Dilation, m12),
        named("21", Generator::Dilation, m21),
        named("22", Generator::Dilation, m22),
    ];
    let info = GridInfo { kind: "line", n, l: Some(l), line_n: Some(n), u: Some((log.u.lower(), log.u.upper())) };
    Ok((b, Grid::Line(line), info, CorpusSpec::default_hermite(), symbols))
}

fn hankel_jxi(m: f64, n: usize, grid: GridOverrides) -> Result<Parts> {
    let reach = grid.u.unwrap_or(16.0);
    let log = LogGrid::symmetric(reach, n)?;
    let h = Arc::new(HankelOperator::new(m, log)?);
    let mellin = Arc::new(MellinEngine::new(log, Measure::Lebesgue, 2)?);
    let xi = Symbol::xi(m);
    let xi_neg = xi.reflected();

    let mut b = Builder::new();
    let jh = {
        let h = h.clone();
        b.op("J H", Side::Kernel, move |f| Ok(inversion_j(&h.apply(scalar(f)?)?)?.into()))
    };
    let xi_a = {
        let (mellin, xi) = (mellin.clone(), xi.clone());
        b.op("Xi(A)", Side::Spectral, move |f| Ok(mellin.apply(&xi, scalar(f)?)?.into()))
    };
    let hj = {
        let h = h.clone();
        b.op("H J", Side::Kernel, move |f| Ok(h.apply(&inversion_j(scalar(f)?)?)?.into()))
    };
    let xi_minus = {
        let xi_neg = xi_neg.clone();
        b.op("Xi(-A)", Side::Spectral, move |f| Ok(mellin.apply(&xi_neg, scalar(f)?)?.into()))
    };
    let hh = b.op("H H", Side::Kernel, move |f| Ok(h.apply(&h.apply(scalar(f)?)?)?.into()));
    let id = b.op("1", Side::Spectral, |f| Ok(f.clone()));
    b.check(jh, xi_a, None);
    b.check(hj, xi_minus, None);
    b.check(hh, id, None);

    let symbols = vec![named("J H", Generator::Dilation, xi), named("H J", Generator::Dilation, xi_neg)];
    let info = GridInfo { kind: "log", n, l: None, line_n: None, u: Some((log.u.lower(), log.u.upper())) };
    Ok((b, Grid::Log(log), info, CorpusSpec::default_log_gauss(), symbols))
}

/// Upper end of the log grid of the 3D case.
const T3D_U_HI: f64 = 8.0;

fn t3d(ell: u32, n: usize, grid: GridOverrides) -> Result<Parts> {
    let reach = grid.u.unwrap_or(34.0);
    let log = LogGrid::new(-reach, T3D_U_HI, n)?;
    let t = Arc::new(T3dOperator::new(ell, log)?);
    let mellin = Arc::new(MellinEngine::new(log, Measure::RadialSquared, 2)?);
    let phi = Symbol::phi(ell);

    let mut b = Builder::new();
    let lhs = b.op("T", Side::Kernel, move |f| Ok(t.apply(scalar(f)?)?.into()));
    let rhs = {
        let (mellin, phi) = (mellin.clone(), phi.clone());
        b.op("phi(A)", Side::Spectral, move |f| Ok(mellin.apply(&phi, scalar(f)?)?.into()))
    };
    b.check(lhs, rhs, None);
    let mut symbols = vec![named("T", Generator::Dilation, phi)];
    if ell == 0 {
        let closed = b.op("phi_0 closed form(A)", Side::Spectral, move |f| {
            Ok(mellin.apply(&Symbol::phi_zero(), scalar(f)?)?.into())
        });
        b.check(rhs, closed, None);
        symbols.push(named("T (closed form)", Generator::Dilation, Symbol::phi_zero()));
    }
    let info = GridInfo { kind: "log", n, l: None, line_n: None, u: Some((log.u.lower(), log.u.upper())) };
    Ok((b, Grid::Log(log), info, CorpusSpec::default_spectral(ell), symbols))
}

/// Fourier-side line grid shared by the interval cases.
fn line_for(n: usize, min_line: usize, l: f64) -> Result<UniformGrid> {
    UniformGrid::centered(l, (16 * n).max(min_line))
}

/// `U* sym(D) U` through the line grid, back onto `source`.
fn conjugated(map: IntervalMap, engine: Arc<FourierEngine>, source: Grid, apply: impl Fn(&FourierEngine, &Field) -> Result<Field> + Send + Sync + 'static) -> impl Fn(&Field) -> Result<Field> + Send + Sync + 'static {
    move |f| {
        let h = map.forward(f, Grid::Line(engine.grid()))?;
        let out = apply(&engine, &h)?;
        map.adjoint(&out, source)
    }
}

fn finite(a: f64, b: f64, n: usize, grid: GridOverrides) -> Result<Parts> {
    let interval = IntervalGrid::new(a, b, n)?;
    let source = Grid::Interval(interval);
    let map = rescale_interval(a, b)?;
    let line = line_for(n, 1 << 16, grid.l.unwrap_or(16.0))?;
    let engine = Arc::new(FourierEngine::new(line, 2)?);
    let sym = Symbol::finite_hilbert();

    let mut bl = Builder::new();
    let lhs = bl.op("H(a,b)", Side::Kernel, move |f| Ok(finite_hilbert(scalar(f)?)?.into()));
    let rhs = {
        let sym = sym.clone();
        bl.op(
            "U* (-i tanh(pi D/2)) U",
            Side::Spectral,
            conjugated(map, engine, source, move |e, h| Ok(e.apply(&sym, h.as_scalar()?)?.into())),
        )
    };
    bl.check(lhs, rhs, None);
    let info = GridInfo { kind: "interval", n, l: Some(line.upper()), line_n: Some(line.n), u: None };
    Ok((bl, source, info, CorpusSpec::default_bumps(), vec![named("U H U*", Generator::Momentum, sym)]))
}

/// `-1/2 [b+ tanh(pi D) b+^-1 - i b- sech(pi D) b+^-1]` on the line.
pub fn weighted_exact(engine: &FourierEngine, h: &GridFunction) -> Result<GridFunction> {
    let u = h.multiply(|x| C64::new(1.0 / b_plus(x), 0.0))?;
    let first = engine.apply(&Symbol::tanh_pi(1.0), &u)?.multiply(|x| C64::new(b_plus(x), 0.0))?;
    let second = engine.apply(&Symbol::sech_pi(1.0), &u)?.multiply(|x| C64::new(b_minus(x), 0.0))?;
    first.axpy(C64::new(-0.5, 0.0), &second.scale(C64::new(0.0, 0.5)))
}

/// `-1/2 [tanh(pi D) - i tanh(X) sech(pi D)]` on the line.
pub fn weighted_simple(engine: &FourierEngine, h: &GridFunction) -> Result<GridFunction> {
    let first = engine.apply(&Symbol::tanh_pi(1.0), h)?;
    let second = engine.apply(&Symbol::sech_pi(1.0), h)?.multiply(|x| C64::new(x.tanh(), 0.0))?;
    first.axpy(C64::new(-0.5, 0.0), &second.scale(C64::new(0.0, 0.5)))
}

fn weighted(n: usize, grid: GridOverrides) -> Result<Parts> {
    let interval = IntervalGrid::new(-2.0, 2.0, n)?;
    let source = Grid::Interval(interval);
    let line = line_for(n, 1 << 16, grid.l.unwrap_or(16.0))?;
    let engine = Arc::new(FourierEngine::new(line, 4)?);

    let mut b = Builder::new();
    let lhs = b.op("R", Side::Kernel, move |f| Ok(weighted_finite_hilbert(scalar(f)?)?.into()));
    let rhs = b.op(
        "U* R_exact(X, D) U",
        Side::Spectral,
        conjugated(rescale_pm2(), engine, source, |e, h| Ok(weighted_exact(e, h.as_scalar()?)?.into())),
    );
    b.check(lhs, rhs, None);
    let symbols = vec![
        named("tanh part", Generator::Momentum, Symbol::tanh_pi(1.0)),
        named("sech part", Generator::Momentum, Symbol::sech_pi(1.0)),
    ];
    let info = GridInfo { kind: "interval", n, l: Some(line.upper()), line_n: Some(line.n), u: None };
    Ok((b, source, info, CorpusSpec::default_bumps(), symbols))
}

/// Outer reach of the gapped set, in units of the mass.
const SIGMA_REACH: f64 = 10.0;

fn dirac(mass: f64, n: usize, grid: GridOverrides) -> Result<Parts> {
    if n < 2 {
        return Err(invalid("n", "the gapped set needs two branches"));
    }
    let split = SplitGrid::new(mass, SIGMA_REACH * mass, n / 2)?;
    let source = Grid::Split(split);
    let map = rescale_sigma(mass)?;
    let line = UniformGrid::centered(grid.l.unwrap_or(32.0), (8 * n).max(1 << 17))?;
    let engine = Arc::new(FourierEngine::new(line, 4)?);
    let matrix = MatrixSymbol::diagonal(Symbol::dirac(1.0), Symbol::dirac(-1.0));

    let mut b = Builder::new();
    let lhs = b.op("K", Side::Kernel, move |f| Ok(dirac_kernel(mass, f.as_pair()?)?.into()));
    let rhs = {
        let matrix = matrix.clone();
        b.op(
            "U* M(D) U",
            Side::Spectral,
            conjugated(map, engine, source, move |e, h| Ok(e.apply_matrix(&matrix, h.as_pair()?)?.into())),
        )
    };
    b.check(lhs, rhs, Some(0));
    b.check(lhs, rhs, Some(1));
    let [[d1, _], [_, d2]] = matrix.entries;
    let symbols = vec![named("11", Generator::Momentum, d1), named("22", Generator::Momentum, d2)];
    let info = GridInfo { kind: "split", n: 2 * split.per_branch, l: Some(line.upper()), line_n: Some(line.n), u: None };
    Ok((b, source, info, CorpusSpec::default_two_branch(mass), symbols))
}

/// One row of the Xi-product probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiRow {
    pub t: f64,
    pub value: C64,
    pub limit: C64,
    pub distance: f64,
}

/// `Xi_m(-t) Xi_m'(t)` at each `t` against its limit at the matching end.
pub fn xi_asymptotics_probe(m: f64, mp: f64, ts: &[f64]) -> Result<Vec<XiRow>> {
    for (name, v) in [("m", m), ("m'", mp)] {
        if !(v > -1.0) || !v.is_finite() {
            return Err(invalid(name, "Hankel order must be a real number > -1"));
        }
    }
    Ok(ts
        .iter()
        .map(|&t| {
            let value = xi_product(m, mp, t);
            let limit = xi_product_limit(m, mp, if t < 0.0 { -1.0 } else { 1.0 });
            XiRow { t, value, limit, distance: (value - limit).norm() }
        })
        .collect())
}

/// One row of the compact-remainder probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RemainderRow {
    pub shift: f64,
    pub ratio: f64,
}

/// Spacing of the translated bumps.
pub const REMAINDER_STEP: f64 = 2.0;

/// `r(s) = |(R_exact - R_simple) psi(. - s)| / |psi(. - s)|` on the rescaled
/// line for `s = 0, 2, ...`, `n_shifts` values.
pub fn compact_remainder_probe(n_shifts: usize) -> Result<Vec<RemainderRow>> {
    let reach = REMAINDER_STEP * n_shifts as f64 + 20.0;
    let line = UniformGrid::centered(reach, 1 << 15)?;
    let engine = FourierEngine::new(line, 4)?;
    (0..n_shifts)
        .map(|k| {
            let shift = REMAINDER_STEP * k as f64;
            let f = GridFunction::sample(Grid::Line(line), |x| C64::new(bump(x - shift), 0.0))?;
            let d = weighted_exact(&engine, &f)?.distance(&weighted_simple(&engine, &f)?)?;
            Ok(RemainderRow { shift, ratio: d / f.norm() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: usize) -> GridOverrides {
        GridOverrides { n: Some(n), ..Default::default() }
    }

    #[test]
    fn names_round_trip() {
        for c in CaseName::ALL {
            assert_eq!(CaseName::parse(c.id()), Some(c));
            assert_eq!(CaseName::parse(&c.id().to_lowercase()), Some(c));
        }
        assert_eq!(CaseName::parse("nope"), None);
    }

    #[test]
    fn hilbert_symbol_is_off_diagonal() {
        let case = build_case(CaseName::HilbertEvenOdd, CaseParams::default(), small(1 << 10)).unwrap();
        for t in [-3.0, -0.5, 0.0, 0.7, 4.0] {
            assert_eq!(case.symbols[0].symbol.eval(t), C64::new(0.0, 0.0));
            assert_eq!(case.symbols[3].symbol.eval(t), C64::new(0.0, 0.0));
            assert!(case.symbols[1].symbol.eval(t).norm() > 0.9);
        }
        assert_eq!(case.checks.len(), 3);
    }

    #[test]
    fn hankel_symbol_is_unimodular() {
        let case = build_case(CaseName::HankelJxi, CaseParams { m: 0.5, ..Default::default() }, small(1 << 10)).unwrap();
        for t in [-20.0, -1.0, 0.0, 0.3, 9.0] {
            assert!((case.symbols[0].symbol.eval(t).norm() - 1.0).abs() < 1e-12);
            assert!((case.symbols[1].symbol.eval(t) - case.symbols[0].symbol.eval(-t)).norm() < 1e-15);
        }
    }

    #[test]
    fn finite_symbol_is_odd_imaginary() {
        let params = CaseParams { a: 0.0, b: 1.0, ..Default::default() };
        let case = build_case(CaseName::FiniteHilbert, params, small(1 << 10)).unwrap();
        let s = &case.symbols[0].symbol;
        for k in [0.1, 1.0, 3.0] {
            let v = s.eval(k);
            assert_eq!(v.re, 0.0);
            assert_eq!(s.eval(-k), -v);
            assert!((v.im + (0.5 * crate::PI * k).tanh()).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let bad = [
            (CaseName::HankelJxi, CaseParams { m: -1.0, ..Default::default() }),
            (CaseName::FiniteHilbert, CaseParams { a: 1.0, b: 1.0, ..Default::default() }),
            (CaseName::DiracUpsideDown, CaseParams { mass: 0.0, ..Default::default() }),
        ];
        for (name, p) in bad {
            assert!(matches!(build_case(name, p, small(1 << 10)), Err(Error::InvalidParameter { .. })));
        }
    }

    #[test]
    fn small_finite_case_is_close() {
        let case = build_case(CaseName::FiniteHilbert, CaseParams::default(), small(1 << 11)).unwrap();
        let report = evaluate_case(&case, Some(2)).unwrap();
        assert_eq!(report.errors.len(), 2);
        assert!(report.max_error < 1e-3, "{}", report.max_error);
        assert_eq!(report.max_error, report.errors.iter().cloned().fold(0.0, f64::max));
    }

    #[test]
    fn member_failures_name_the_member() {
        let case = build_case(CaseName::WeightedFiniteHilbert, CaseParams::default(), small(1 << 10)).unwrap();
        let f: Field = GridFunction::sample(case.source, |_| C64::new(1.0, 0.0)).unwrap().into();
        match case.evaluate_member("flat", &f) {
            Err(Error::Member { member, source }) => {
                assert_eq!(member, "flat");
                assert!(matches!(*source, Error::InvalidParameter { .. }));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn nan_is_never_a_pass() {
        assert!(max_of(&[1e-9, f64::NAN, 1e-8]).is_nan());
        assert!(!(max_of(&[f64::NAN]) <= 1.0));
    }

    #[test]
    fn xi_probe_trivial_and_limits() {
        let rows = xi_asymptotics_probe(0.0, 0.0, &[10.0, 100.0]).unwrap();
        assert!(rows.iter().all(|r| r.distance < 1e-12));
        let rows = xi_asymptotics_probe(0.5, 2.5, &[-100.0, 100.0]).unwrap();
        for r in rows {
            assert!((r.limit + C64::new(1.0, 0.0)).norm() < 1e-12);
        }
        assert!(xi_asymptotics_probe(-1.5, 0.0, &[1.0]).is_err());
    }

    #[test]
    fn remainder_is_nonzero_at_origin() {
        let rows = compact_remainder_probe(1).unwrap();
        assert!(rows[0].ratio > 1e-3);
    }
}
