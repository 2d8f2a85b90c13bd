//! Deterministic test-function families.
//!
//! Every member is normalized to unit `L^2` norm on its grid and must have
//! decayed below [`EDGE_LIMIT`] at the outer nodes of every branch.

use alloc::format;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::error::invalid;
use crate::grids::{Field, Grid, GridFunction, Measure, PairFunction};
use crate::kernels::SphericalFourier;
use crate::{Error, Result, C64};

/// Largest admissible edge value of a unit-norm member.
pub const EDGE_LIMIT: f64 = 1e-12;

/// `exp(-1/(1 - u^2))` on `|u| < 1`, zero outside.
pub fn bump(u: f64) -> f64 {
    if u.abs() < 1.0 {
        (-1.0 / (1.0 - u * u)).exp()
    } else {
        0.0
    }
}

/// Probabilists' Hermite polynomial `He_d`.
pub fn hermite(d: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if d == 0 {
        return prev;
    }
    for k in 1..d {
        let next = x * cur - k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// One member of the two-branch family on `Sigma`: bumps of half-width `w`
/// centred at `+p` and `-q`, mixed differently in the two components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoBranch {
    pub p: f64,
    pub q: f64,
    pub w: f64,
}

impl TwoBranch {
    pub fn scaled(&self, c: f64) -> TwoBranch {
        TwoBranch { p: c * self.p, q: c * self.q, w: c * self.w }
    }

    pub fn eval(&self, lambda: f64) -> (C64, C64) {
        let right = bump((lambda - self.p) / self.w);
        let left = bump((lambda + self.q) / self.w);
        (C64::new(right + 0.5 * left, 0.0), C64::new(-0.7 * right, left))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSpec {
    /// `He_d(x/s) exp(-(x/s)^2/2)` on a line grid.
    GaussHermite { scale: f64, degrees: Vec<u32> },
    /// `bump(u) e^{i k u}` with `u = (t - c)/w`, where `t` is the position as
    /// a fraction of the interval; members are `(c, w, k)`.
    Bump { members: Vec<(f64, f64, f64)> },
    /// `x^{-1/2} exp(-(ln x - c)^2/(2 s^2)) e^{i k ln x}`; members `(c, s, k)`.
    LogGauss { members: Vec<(f64, f64, f64)> },
    /// `F_l h` for `h(k) = k^{-3/2} exp(-(ln k - c)^2/(2 s^2))` in
    /// `L^2(R_+, r^2 dr)`; members `(c, s)`.
    SpectralBump { ell: u32, members: Vec<(f64, f64)> },
    /// Pair-valued bumps on both branches of `Sigma`.
    TwoBranchBump { members: Vec<TwoBranch> },
}

impl CorpusSpec {
    pub fn family(&self) -> &'static str {
        match self {
            CorpusSpec::GaussHermite { .. } => "gauss_hermite",
            CorpusSpec::Bump { .. } => "bump",
            CorpusSpec::LogGauss { .. } => "log_gauss",
            CorpusSpec::SpectralBump { .. } => "spectral_bump",
            CorpusSpec::TwoBranchBump { .. } => "two_branch_bump",
        }
    }

    pub fn len(&self) -> usize {
        match self {
            CorpusSpec::GaussHermite { degrees, .. } => degrees.len(),
            CorpusSpec::Bump { members } | CorpusSpec::LogGauss { members } => members.len(),
            CorpusSpec::SpectralBump { members, .. } => members.len(),
            CorpusSpec::TwoBranchBump { members } => members.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Labels of the members, in order.
    pub fn labels(&self) -> Vec<alloc::string::String> {
        match self {
            CorpusSpec::GaussHermite { scale, degrees } => degrees.iter().map(|d| format!("hermite(d={d},s={scale})")).collect(),
            CorpusSpec::Bump { members } => members.iter().map(|(c, w, k)| format!("bump(c={c},w={w},k={k})")).collect(),
            CorpusSpec::LogGauss { members } => {
                members.iter().map(|(c, s, k)| format!("log_gauss(c={c},s={s},k={k})")).collect()
            }
            CorpusSpec::SpectralBump { ell, members } => {
                members.iter().map(|(c, s)| format!("spectral_bump(l={ell},c={c},s={s})")).collect()
            }
            CorpusSpec::TwoBranchBump { members } => {
                members.iter().map(|m| format!("two_branch(p={},q={},w={})", m.p, m.q, m.w)).collect()
            }
        }
    }

    /// Eight Hermite functions of degree 6 to 13 at scale 1/2.
    pub fn default_hermite() -> Self {
        CorpusSpec::GaussHermite { scale: 0.5, degrees: (6..14).collect() }
    }

    /// Eight bumps placed by fractions of the interval.
    pub fn default_bumps() -> Self {
        CorpusSpec::Bump {
            members: alloc::vec![
                (0.5, 0.3, 0.0),
                (0.3, 0.2, 0.0),
                (0.7, 0.2, 3.0),
                (0.4, 0.35, -2.0),
                (0.6, 0.25, 1.0),
                (0.25, 0.15, 0.0),
                (0.75, 0.15, -1.0),
                (0.5, 0.45, 0.5),
            ],
        }
    }

    pub fn default_log_gauss() -> Self {
        CorpusSpec::LogGauss {
            members: alloc::vec![
                (0.0, 1.0, 0.0),
                (1.0, 0.5, 0.0),
                (-1.0, 0.7, 0.0),
                (0.5, 0.6, 2.0),
                (-0.5, 0.8, -1.5),
                (0.0, 0.4, 1.0),
            ],
        }
    }

    pub fn default_spectral(ell: u32) -> Self {
        CorpusSpec::SpectralBump { ell, members: alloc::vec![(0.0, 0.5), (0.5, 0.4), (-0.5, 0.6), (1.0, 0.5)] }
    }

    /// Supports inside `(-5c, -1.5c) U (1.5c, 5c)` for mass scale `c`.
    pub fn default_two_branch(c: f64) -> Self {
        let base = [
            TwoBranch { p: 3.0, q: 3.0, w: 1.4 },
            TwoBranch { p: 2.5, q: 3.5, w: 0.9 },
            TwoBranch { p: 4.0, q: 2.2, w: 0.6 },
            TwoBranch { p: 3.2, q: 2.8, w: 1.0 },
        ];
        CorpusSpec::TwoBranchBump { members: base.iter().map(|m| m.scaled(c)).collect() }
    }
}

/// Samples every member on `grid`, normalized, with the edge check.
pub fn make_corpus(spec: &CorpusSpec, grid: Grid) -> Result<Vec<Field>> {
    let labels = spec.labels();
    let raw: Vec<Field> = match spec {
        CorpusSpec::GaussHermite { scale, degrees } => {
            if !matches!(grid, Grid::Line(_)) {
                return Err(invalid("corpus", "Hermite functions live on a line grid"));
            }
            let s = *scale;
            degrees
                .iter()
                .map(|&d| {
                    GridFunction::sample(grid, |x| {
                        let y = x / s;
                        C64::new(hermite(d, y) * (-0.5 * y * y).exp(), 0.0)
                    })
                    .map(Field::from)
                })
                .collect::<Result<_>>()?
        }
        CorpusSpec::Bump { members } => {
            let (a, b) = match grid {
                Grid::Interval(g) => (g.a, g.b),
                _ => return Err(invalid("corpus", "bumps live on an interval grid")),
            };
            members
                .iter()
                .map(|&(c, w, k)| {
                    GridFunction::sample(grid, |x| {
                        let u = ((x - a) / (b - a) - c) / w;
                        C64::from_polar(bump(u), k * u)
                    })
                    .map(Field::from)
                })
                .collect::<Result<_>>()?
        }
        CorpusSpec::LogGauss { members } => {
            if !matches!(grid, Grid::Log(_)) {
                return Err(invalid("corpus", "log-Gaussians live on a log grid"));
            }
            members
                .iter()
                .map(|&(c, s, k)| {
                    GridFunction::sample(grid, |x| {
                        let u = x.ln();
                        C64::from_polar(x.powf(-0.5) * (-(u - c) * (u - c) / (2.0 * s * s)).exp(), k * u)
                    })
                    .map(Field::from)
                })
                .collect::<Result<_>>()?
        }
        CorpusSpec::SpectralBump { ell, members } => {
            let log = match grid {
                Grid::Log(g) => g,
                _ => return Err(invalid("corpus", "spectral bumps live on a log grid")),
            };
            let fourier = SphericalFourier::new(*ell, log)?;
            // the defining bump is checked; its transform carries the
            // quadrature noise floor of the radial transform at the far end
            return members
                .iter()
                .zip(labels)
                .map(|(&(c, s), label)| {
                    let h = GridFunction::sample_in(grid, Measure::RadialSquared, |k| {
                        let u = k.ln();
                        C64::new(k.powf(-1.5) * (-(u - c) * (u - c) / (2.0 * s * s)).exp(), 0.0)
                    })?;
                    let h = normalized(h.into(), &label)?;
                    let g = fourier.apply(h.as_scalar()?)?;
                    let norm = g.norm();
                    Ok(g.scale(C64::new(1.0 / norm, 0.0)).into())
                })
                .collect();
        }
        CorpusSpec::TwoBranchBump { members } => {
            if !matches!(grid, Grid::Split(_)) {
                return Err(invalid("corpus", "two-branch bumps live on a split grid"));
            }
            members.iter().map(|m| PairFunction::sample(grid, |x| m.eval(x)).map(Field::from)).collect::<Result<_>>()?
        }
    };
    raw.into_iter().zip(labels).map(|(f, label)| normalized(f, &label)).collect()
}

fn normalized(f: Field, label: &str) -> Result<Field> {
    let norm = f.norm();
    if !(norm > 0.0) {
        return Err(invalid("corpus", format!("member {label} vanishes on the grid")));
    }
    let f = scale_field(&f, 1.0 / norm);
    let edge = f.edge_magnitude();
    if !(edge < EDGE_LIMIT) {
        return Err(Error::EdgeViolation { member: label.into(), value: edge });
    }
    Ok(f)
}

fn scale_field(f: &Field, s: f64) -> Field {
    let a = C64::new(s, 0.0);
    match f {
        Field::Scalar(g) => g.scale(a).into(),
        Field::Pair(p) => PairFunction { first: p.first.scale(a), second: p.second.scale(a) }.into(),
    }
}
