//! Unitary changes of representation onto the line or the half-line.
//!
//! A map `U f(x) = c(x) f(lambda(x))` has `|c|^2 = |lambda'|`, and its
//! adjoint is `U* h(lambda) = c*(lambda) h(x(lambda))` with `c*` the
//! reciprocal of `c` at `x(lambda)`. Grid samples are moved by cubic
//! interpolation, with zero outside the source grid.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::error::invalid;
use crate::grids::{Field, Grid, GridFunction, Measure, PairFunction};
use crate::{Error, Result, C64};

/// The four representation changes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IntervalMap {
    /// `L^2(R) -> L^2(R_+; C^2)`, `f -> sqrt 2 (f_even, f_odd)`.
    EvenOdd,
    /// `L^2((a, b)) -> L^2(R)`, `lambda = (a + b e^{2x}) / (1 + e^{2x})`.
    Interval { a: f64, b: f64 },
    /// `L^2((-2, 2)) -> L^2(R)`, `lambda = 2 tanh x`.
    Pm2,
    /// `L^2(Sigma; C^2) -> L^2(R; C^2)`, `lambda = m (e^x + 1)/(e^x - 1)`.
    Sigma { mass: f64 },
}

pub fn rescale_interval(a: f64, b: f64) -> Result<IntervalMap> {
    if !(b > a) || !a.is_finite() || !b.is_finite() {
        return Err(invalid("interval", "need finite a < b"));
    }
    Ok(IntervalMap::Interval { a, b })
}

pub fn rescale_pm2() -> IntervalMap {
    IntervalMap::Pm2
}

pub fn rescale_sigma(mass: f64) -> Result<IntervalMap> {
    if !(mass > 0.0) || !mass.is_finite() {
        return Err(invalid("mass", "must be positive"));
    }
    Ok(IntervalMap::Sigma { mass })
}

impl IntervalMap {
    pub fn name(&self) -> &'static str {
        match self {
            IntervalMap::EvenOdd => "even_odd",
            IntervalMap::Interval { .. } => "interval",
            IntervalMap::Pm2 => "pm2",
            IntervalMap::Sigma { .. } => "sigma",
        }
    }

    /// Source point `lambda(x)` read off at target point `x`. For the
    /// even/odd map this is `|x|`: multiplication by an even function
    /// `rho(|x|)` transports to multiplication by `rho(r)`.
    pub fn source_point(&self, x: f64) -> f64 {
        match *self {
            IntervalMap::EvenOdd => x.abs(),
            IntervalMap::Interval { a, b } => {
                // logistic form that stays finite for large |x|
                let s = 1.0 / (1.0 + (-2.0 * x).exp());
                a + (b - a) * s
            }
            IntervalMap::Pm2 => 2.0 * x.tanh(),
            IntervalMap::Sigma { mass } => mass / (0.5 * x).tanh(),
        }
    }

    /// `x(lambda)`, the inverse of [`IntervalMap::source_point`].
    pub fn target_point(&self, lambda: f64) -> f64 {
        match *self {
            IntervalMap::EvenOdd => lambda.abs(),
            IntervalMap::Interval { a, b } => 0.5 * ((lambda - a) / (b - lambda)).ln(),
            IntervalMap::Pm2 => (0.5 * lambda).atanh(),
            IntervalMap::Sigma { mass } => ((lambda + mass) / (lambda - mass)).ln(),
        }
    }

    /// Factor `c(x)` of the forward map.
    pub fn forward_factor(&self, x: f64) -> f64 {
        match *self {
            IntervalMap::EvenOdd => 2.0.sqrt(),
            IntervalMap::Interval { a, b } => ((b - a) / 2.0).sqrt() / x.cosh(),
            IntervalMap::Pm2 => 2.0.sqrt() / x.cosh(),
            IntervalMap::Sigma { mass } => {
                // e^{x/2}/(e^x - 1) = 1/(2 sinh(x/2))
                (2.0 * mass).sqrt() / (2.0 * (0.5 * x).sinh())
            }
        }
    }

    /// Factor of the adjoint at `lambda`. For the gapped set the ratio
    /// `(lambda + m)/(lambda - m)` is positive on both branches and the
    /// positive root is taken, so the factor carries the sign of `lambda + m`.
    pub fn adjoint_factor(&self, lambda: f64) -> f64 {
        match *self {
            IntervalMap::EvenOdd => 1.0 / 2.0.sqrt(),
            IntervalMap::Interval { a, b } => {
                let x = self.target_point(lambda);
                x.cosh() / ((b - a) / 2.0).sqrt()
            }
            IntervalMap::Pm2 => (0.5 * lambda).atanh().cosh() / 2.0.sqrt(),
            IntervalMap::Sigma { mass } => {
                (2.0 * mass).sqrt() * ((lambda + mass) / (lambda - mass)).sqrt() / (lambda + mass)
            }
        }
    }

    /// `U f` at one target point, from a pointwise rule on the source domain.
    pub fn forward_at(&self, rule: impl Fn(f64) -> C64, x: f64) -> C64 {
        rule(self.source_point(x)) * self.forward_factor(x)
    }

    /// `(U f)` for the even/odd map at `r > 0`.
    pub fn even_odd_at(rule: impl Fn(f64) -> C64, r: f64) -> (C64, C64) {
        let (p, m) = (rule(r), rule(-r));
        let s = 2.0.sqrt() / 2.0;
        ((p + m) * s, (p - m) * s)
    }

    /// The multiplier `rho(lambda(x))` that `rho(L)` becomes.
    pub fn transported(&self, rho: impl Fn(f64) -> C64) -> impl Fn(f64) -> C64 {
        let map = *self;
        move |x| rho(map.source_point(x))
    }

    /// Largest pointwise discrepancy between `U (rho f)` and
    /// `rho(lambda(X)) U f` over `xs`.
    pub fn transport_error(&self, rho: impl Fn(f64) -> C64, rule: impl Fn(f64) -> C64, xs: &[f64]) -> f64 {
        let moved = self.transported(&rho);
        xs.iter()
            .map(|&x| match self {
                IntervalMap::EvenOdd => {
                    let product = |y: f64| rho(y.abs()) * rule(y);
                    let (l1, l2) = IntervalMap::even_odd_at(product, x);
                    let (r1, r2) = IntervalMap::even_odd_at(&rule, x);
                    (l1 - moved(x) * r1).norm().max((l2 - moved(x) * r2).norm())
                }
                _ => {
                    let lhs = self.forward_at(|y| rho(y) * rule(y), x);
                    (lhs - moved(x) * self.forward_at(&rule, x)).norm()
                }
            })
            .fold(0.0, f64::max)
    }

    fn check_source(&self, grid: Grid) -> Result<()> {
        let ok = match (*self, grid) {
            (IntervalMap::EvenOdd, Grid::Line(g)) => {
                if !g.is_symmetric() {
                    return Err(Error::AsymmetricGrid);
                }
                true
            }
            (IntervalMap::Interval { a, b }, Grid::Interval(g)) => g.a == a && g.b == b,
            (IntervalMap::Pm2, Grid::Interval(g)) => g.a == -2.0 && g.b == 2.0,
            (IntervalMap::Sigma { mass }, Grid::Split(g)) => g.mass == mass,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    fn check_target(&self, grid: Grid) -> Result<()> {
        match (self, grid) {
            (IntervalMap::EvenOdd, Grid::Log(_)) => Ok(()),
            (IntervalMap::EvenOdd, _) => Err(Error::GridMismatch),
            (_, Grid::Line(_)) => Ok(()),
            _ => Err(Error::GridMismatch),
        }
    }

    fn forward_scalar(&self, f: &GridFunction, target: Grid) -> Result<GridFunction> {
        let values = target
            .points()
            .iter()
            .map(|&x| f.interpolate(self.source_point(x)) * self.forward_factor(x))
            .collect();
        GridFunction::from_values(target, Measure::Lebesgue, values)
    }

    fn adjoint_scalar(&self, h: &GridFunction, target: Grid) -> Result<GridFunction> {
        let values = target
            .points()
            .iter()
            .map(|&l| h.interpolate(self.target_point(l)) * self.adjoint_factor(l))
            .collect();
        GridFunction::from_values(target, Measure::Lebesgue, values)
    }

    /// `U f` sampled on `target`: a log grid for the even/odd map, a line
    /// grid otherwise. Pair-valued data is mapped componentwise.
    pub fn forward(&self, f: &Field, target: Grid) -> Result<Field> {
        self.check_source(f.grid())?;
        self.check_target(target)?;
        match (self, f) {
            (IntervalMap::EvenOdd, Field::Scalar(f)) => Ok(even_odd_split(f, target)?.into()),
            (IntervalMap::EvenOdd, Field::Pair(_)) => Err(invalid("field", "the even/odd map takes scalar data")),
            (_, Field::Scalar(f)) => Ok(self.forward_scalar(f, target)?.into()),
            (_, Field::Pair(p)) => {
                Ok(PairFunction::new(self.forward_scalar(&p.first, target)?, self.forward_scalar(&p.second, target)?)?
                    .into())
            }
        }
    }

    /// `U* h` sampled on `target`, which must be a source grid of the map.
    pub fn adjoint(&self, h: &Field, target: Grid) -> Result<Field> {
        self.check_source(target)?;
        self.check_target(h.grid())?;
        match (self, h) {
            (IntervalMap::EvenOdd, Field::Pair(p)) => Ok(even_odd_adjoint(p, target)?.into()),
            (IntervalMap::EvenOdd, Field::Scalar(_)) => Err(invalid("field", "the even/odd adjoint takes pairs")),
            (_, Field::Scalar(h)) => Ok(self.adjoint_scalar(h, target)?.into()),
            (_, Field::Pair(p)) => {
                Ok(PairFunction::new(self.adjoint_scalar(&p.first, target)?, self.adjoint_scalar(&p.second, target)?)?
                    .into())
            }
        }
    }
}

/// `sqrt 2 (f_even, f_odd)` restricted to the half-line and resampled onto
/// a log grid. The line grid must be symmetric about 0.
pub fn even_odd_split(f: &GridFunction, target: Grid) -> Result<PairFunction> {
    match f.grid() {
        Grid::Line(g) if g.is_symmetric() => {}
        Grid::Line(_) => return Err(Error::AsymmetricGrid),
        _ => return Err(Error::GridMismatch),
    }
    if !matches!(target, Grid::Log(_)) {
        return Err(Error::GridMismatch);
    }
    let (first, second): (Vec<C64>, Vec<C64>) = target
        .points()
        .iter()
        .map(|&r| IntervalMap::even_odd_at(|y| f.interpolate(y), r))
        .unzip();
    PairFunction::new(
        GridFunction::from_values(target, Measure::Lebesgue, first)?,
        GridFunction::from_values(target, Measure::Lebesgue, second)?,
    )
}

/// `(h_1(|x|) + sgn(x) h_2(|x|)) / sqrt 2` on a symmetric line grid.
pub fn even_odd_adjoint(h: &PairFunction, target: Grid) -> Result<GridFunction> {
    match target {
        Grid::Line(g) if g.is_symmetric() => {}
        Grid::Line(_) => return Err(Error::AsymmetricGrid),
        _ => return Err(Error::GridMismatch),
    }
    if !matches!(h.grid(), Grid::Log(_)) {
        return Err(Error::GridMismatch);
    }
    let s = 1.0 / 2.0.sqrt();
    let values = target
        .points()
        .iter()
        .map(|&x| {
            let r = x.abs();
            let odd = h.second.interpolate(r);
            (h.first.interpolate(r) + if x < 0.0 { -odd } else { odd }) * s
        })
        .collect();
    GridFunction::from_values(target, Measure::Lebesgue, values)
}
