//! Grids on the line, the half-line (logarithmic), open intervals and the
//! gapped set `(-inf, -m) U (m, inf)`, together with sampled functions and
//! their discrete `L^2` geometry.
//!
//! Every grid is cell-centered: a node sits in the middle of its cell, so
//! open-interval endpoints, the origin of a symmetric line grid and the gap
//! edges `+-m` are never sampled. Each node carries the width of its cell
//! as quadrature weight (midpoint rule), scaled by `x` or `x^3` on
//! logarithmic grids for `dx` and `r^2 dr`.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::error::invalid;
use crate::interp::cubic_uniform;
use crate::{Error, Result, C64};

const MIN_POINTS: usize = 8;

fn check_count(n: usize) -> Result<()> {
    if n < MIN_POINTS {
        return Err(invalid("n", "at least 8 points are required"));
    }
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo { n });
    }
    Ok(())
}

/// Points `x0 + j dx`, `j = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    pub x0: f64,
    pub dx: f64,
    pub n: usize,
}

impl UniformGrid {
    pub fn new(x0: f64, dx: f64, n: usize) -> Result<Self> {
        check_count(n)?;
        if !(dx > 0.0) || !dx.is_finite() || !x0.is_finite() {
            return Err(invalid("dx", "spacing must be positive and finite"));
        }
        Ok(UniformGrid { x0, dx, n })
    }

    /// `n` cells covering `[a, b]`, one node at each cell center.
    pub fn cells(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(b > a) {
            return Err(invalid("interval", "need a < b"));
        }
        let dx = (b - a) / n as f64;
        UniformGrid::new(a + 0.5 * dx, dx, n)
    }

    /// Cell-centered grid on `[-l, l]`; symmetric, and excludes 0.
    pub fn centered(l: f64, n: usize) -> Result<Self> {
        UniformGrid::cells(-l, l, n)
    }

    pub fn point(&self, j: usize) -> f64 {
        self.x0 + j as f64 * self.dx
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |j| self.point(j))
    }

    pub fn last(&self) -> f64 {
        self.point(self.n - 1)
    }

    /// Left end of the first cell.
    pub fn lower(&self) -> f64 {
        self.x0 - 0.5 * self.dx
    }

    /// Right end of the last cell.
    pub fn upper(&self) -> f64 {
        self.last() + 0.5 * self.dx
    }

    /// Node `n - 1 - j` is the mirror image of node `j`.
    pub fn is_symmetric(&self) -> bool {
        (self.x0 + self.last()).abs() <= 1e-12 * self.dx
    }

    /// Same extent, twice the nodes.
    pub fn refined(&self) -> Result<Self> {
        UniformGrid::cells(self.lower(), self.upper(), 2 * self.n)
    }
}

/// Points `x_j = exp(u_j)` on the half-line, `u_j` uniform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogGrid {
    pub u: UniformGrid,
}

impl LogGrid {
    /// Cell-centered in `u` on `[u_lo, u_hi]`.
    pub fn new(u_lo: f64, u_hi: f64, n: usize) -> Result<Self> {
        Ok(LogGrid { u: UniformGrid::cells(u_lo, u_hi, n)? })
    }

    /// `[e^{-big_u}, e^{big_u}]`; then `1/x_j = x_{n-1-j}` up to rounding.
    pub fn symmetric(big_u: f64, n: usize) -> Result<Self> {
        LogGrid::new(-big_u, big_u, n)
    }

    pub fn len(&self) -> usize {
        self.u.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, j: usize) -> f64 {
        self.u.point(j).exp()
    }

    pub fn is_symmetric(&self) -> bool {
        self.u.is_symmetric()
    }
}

/// Cell-centered grid on the open interval `(a, b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntervalGrid {
    pub a: f64,
    pub b: f64,
    pub cells: UniformGrid,
}

impl IntervalGrid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        Ok(IntervalGrid { a, b, cells: UniformGrid::cells(a, b, n)? })
    }
}

/// Which half of the gapped set a node belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Negative,
    Positive,
}

/// `(-reach, -mass) U (mass, reach)`, `per_branch` cells on each side.
/// Nodes are stored in increasing order, the negative branch first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitGrid {
    pub mass: f64,
    pub reach: f64,
    pub per_branch: usize,
}

impl SplitGrid {
    pub fn new(mass: f64, reach: f64, per_branch: usize) -> Result<Self> {
        check_count(per_branch)?;
        if !(mass > 0.0) || !(reach > mass) || !reach.is_finite() {
            return Err(invalid("split grid", "need 0 < mass < reach"));
        }
        Ok(SplitGrid { mass, reach, per_branch })
    }

    pub fn spacing(&self) -> f64 {
        (self.reach - self.mass) / self.per_branch as f64
    }

    pub fn branch_of(&self, j: usize) -> Branch {
        if j < self.per_branch {
            Branch::Negative
        } else {
            Branch::Positive
        }
    }

    /// The branch as a uniform grid in `lambda`.
    pub fn branch_grid(&self, branch: Branch) -> UniformGrid {
        let h = self.spacing();
        let x0 = match branch {
            Branch::Negative => -self.reach + 0.5 * h,
            Branch::Positive => self.mass + 0.5 * h,
        };
        UniformGrid { x0, dx: h, n: self.per_branch }
    }

    pub fn point(&self, j: usize) -> f64 {
        match self.branch_of(j) {
            Branch::Negative => self.branch_grid(Branch::Negative).point(j),
            Branch::Positive => self.branch_grid(Branch::Positive).point(j - self.per_branch),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    Line(UniformGrid),
    Log(LogGrid),
    Interval(IntervalGrid),
    Split(SplitGrid),
}

impl Grid {
    pub fn len(&self) -> usize {
        match self {
            Grid::Line(g) => g.n,
            Grid::Log(g) => g.u.n,
            Grid::Interval(g) => g.cells.n,
            Grid::Split(g) => 2 * g.per_branch,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn point(&self, j: usize) -> f64 {
        match self {
            Grid::Line(g) => g.point(j),
            Grid::Log(g) => g.point(j),
            Grid::Interval(g) => g.cells.point(j),
            Grid::Split(g) => g.point(j),
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.point(j)).collect()
    }

    /// Quadrature weight of node `j` for the given measure.
    pub fn weight(&self, j: usize, measure: Measure) -> f64 {
        match (self, measure) {
            (Grid::Log(g), Measure::Lebesgue) => g.point(j) * g.u.dx,
            (Grid::Log(g), Measure::RadialSquared) => g.point(j).powi(3) * g.u.dx,
            (Grid::Line(g), _) => g.dx,
            (Grid::Interval(g), _) => g.cells.dx,
            (Grid::Split(g), _) => g.spacing(),
        }
    }

    /// Short label for reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Grid::Line(_) => "line",
            Grid::Log(_) => "log",
            Grid::Interval(_) => "interval",
            Grid::Split(_) => "split",
        }
    }

    fn interpolate(&self, values: &[C64], x: f64) -> C64 {
        match self {
            Grid::Line(g) => cubic_uniform(values, g.x0, g.dx, x),
            Grid::Interval(g) => cubic_uniform(values, g.cells.x0, g.cells.dx, x),
            Grid::Log(g) => {
                if x > 0.0 {
                    cubic_uniform(values, g.u.x0, g.u.dx, x.ln())
                } else {
                    C64::new(0.0, 0.0)
                }
            }
            Grid::Split(g) => {
                if x.abs() <= g.mass {
                    return C64::new(0.0, 0.0);
                }
                let nb = g.per_branch;
                let (branch, part) =
                    if x < 0.0 { (Branch::Negative, &values[..nb]) } else { (Branch::Positive, &values[nb..]) };
                let bg = g.branch_grid(branch);
                cubic_uniform(part, bg.x0, bg.dx, x)
            }
        }
    }
}

/// Reference measure of the `L^2` space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// `dx` on any grid.
    Lebesgue,
    /// `r^2 dr` on a logarithmic grid.
    RadialSquared,
}

fn check_measure(grid: &Grid, measure: Measure) -> Result<()> {
    if measure == Measure::RadialSquared && !matches!(grid, Grid::Log(_)) {
        return Err(invalid("measure", "r^2 dr needs a logarithmic grid"));
    }
    Ok(())
}

fn check_finite(values: &[C64]) -> Result<()> {
    match values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
        Some(index) => Err(Error::NonFinite { what: "sample", index }),
        None => Ok(()),
    }
}

/// Complex samples on a grid, with the measure that fixes the weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    measure: Measure,
    values: Vec<C64>,
}

impl GridFunction {
    /// `values[j] = rule(x_j)` with Lebesgue weights.
    pub fn sample(grid: Grid, rule: impl FnMut(f64) -> C64) -> Result<Self> {
        GridFunction::sample_in(grid, Measure::Lebesgue, rule)
    }

    pub fn sample_in(grid: Grid, measure: Measure, mut rule: impl FnMut(f64) -> C64) -> Result<Self> {
        let values = (0..grid.len()).map(|j| rule(grid.point(j))).collect();
        GridFunction::from_values(grid, measure, values)
    }

    pub fn from_values(grid: Grid, measure: Measure, values: Vec<C64>) -> Result<Self> {
        check_measure(&grid, measure)?;
        if values.len() != grid.len() {
            return Err(invalid("values", "length differs from the grid point count"));
        }
        check_finite(&values)?;
        Ok(GridFunction { grid, measure, values })
    }

    pub fn zeros(grid: Grid, measure: Measure) -> Self {
        GridFunction { grid, measure, values: alloc::vec![C64::new(0.0, 0.0); grid.len()] }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn weight(&self, j: usize) -> f64 {
        self.grid.weight(j, self.measure)
    }

    /// Same grid and measure, new samples.
    pub fn with_values(&self, values: Vec<C64>) -> Result<Self> {
        GridFunction::from_values(self.grid, self.measure, values)
    }

    /// `<f, g> = sum conj(f_j) g_j w_j`.
    pub fn inner(&self, other: &GridFunction) -> Result<C64> {
        self.same_space(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(j, (a, b))| a.conj() * b * self.weight(j))
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().enumerate().map(|(j, v)| v.norm_sqr() * self.weight(j)).sum::<f64>().sqrt()
    }

    /// `||f - g||`.
    pub fn distance(&self, other: &GridFunction) -> Result<f64> {
        self.same_space(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(j, (a, b))| (a - b).norm_sqr() * self.weight(j))
            .sum::<f64>()
            .sqrt())
    }

    /// `alpha f + g`.
    pub fn axpy(&self, alpha: C64, other: &GridFunction) -> Result<Self> {
        self.same_space(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * alpha + b).collect();
        self.with_values(values)
    }

    pub fn scale(&self, alpha: C64) -> Self {
        GridFunction { grid: self.grid, measure: self.measure, values: self.values.iter().map(|v| v * alpha).collect() }
    }

    /// Pointwise multiplication by a function of the node coordinate.
    pub fn multiply(&self, mut rho: impl FnMut(f64) -> C64) -> Result<Self> {
        let values = self.values.iter().enumerate().map(|(j, v)| v * rho(self.grid.point(j))).collect();
        self.with_values(values)
    }

    /// Cubic interpolation at an arbitrary point; zero outside the grid.
    pub fn interpolate(&self, x: f64) -> C64 {
        self.grid.interpolate(&self.values, x)
    }

    /// Largest magnitude at the two outermost nodes of every branch. On a
    /// logarithmic grid samples are scaled by `sqrt(w_j / du)`, which turns
    /// them into an `L^2(du)` density.
    pub fn edge_magnitude(&self) -> f64 {
        let n = self.len();
        let mut edges = alloc::vec![0, 1, n - 2, n - 1];
        if let Grid::Split(g) = self.grid {
            let nb = g.per_branch;
            edges.extend([nb - 2, nb - 1, nb, nb + 1]);
        }
        edges
            .into_iter()
            .map(|j| {
                let scale = match self.grid {
                    Grid::Log(g) => (self.weight(j) / g.u.dx).sqrt(),
                    _ => 1.0,
                };
                self.values[j].norm() * scale
            })
            .fold(0.0, f64::max)
    }

    fn same_space(&self, other: &GridFunction) -> Result<()> {
        if self.grid != other.grid || self.measure != other.measure {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }
}

/// A `C^2`-valued function: two component arrays on one grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFunction {
    pub first: GridFunction,
    pub second: GridFunction,
}

impl PairFunction {
    pub fn new(first: GridFunction, second: GridFunction) -> Result<Self> {
        first.same_space(&second)?;
        Ok(PairFunction { first, second })
    }

    pub fn sample(grid: Grid, mut rule: impl FnMut(f64) -> (C64, C64)) -> Result<Self> {
        let (a, b): (Vec<C64>, Vec<C64>) = (0..grid.len()).map(|j| rule(grid.point(j))).unzip();
        PairFunction::new(
            GridFunction::from_values(grid, Measure::Lebesgue, a)?,
            GridFunction::from_values(grid, Measure::Lebesgue, b)?,
        )
    }

    pub fn grid(&self) -> Grid {
        self.first.grid
    }

    pub fn inner(&self, other: &PairFunction) -> Result<C64> {
        Ok(self.first.inner(&other.first)? + self.second.inner(&other.second)?)
    }

    pub fn norm(&self) -> f64 {
        self.first.norm().hypot(self.second.norm())
    }

    pub fn distance(&self, other: &PairFunction) -> Result<f64> {
        Ok(self.first.distance(&other.first)?.hypot(self.second.distance(&other.second)?))
    }

    pub fn edge_magnitude(&self) -> f64 {
        self.first.edge_magnitude().max(self.second.edge_magnitude())
    }
}

/// Scalar or pair-valued grid function; what operator handles consume.
#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Scalar(GridFunction),
    Pair(PairFunction),
}

impl Field {
    pub fn norm(&self) -> f64 {
        match self {
            Field::Scalar(f) => f.norm(),
            Field::Pair(p) => p.norm(),
        }
    }

    pub fn distance(&self, other: &Field) -> Result<f64> {
        match (self, other) {
            (Field::Scalar(a), Field::Scalar(b)) => a.distance(b),
            (Field::Pair(a), Field::Pair(b)) => a.distance(b),
            _ => Err(Error::GridMismatch),
        }
    }

    pub fn grid(&self) -> Grid {
        match self {
            Field::Scalar(f) => f.grid(),
            Field::Pair(p) => p.grid(),
        }
    }

    pub fn edge_magnitude(&self) -> f64 {
        match self {
            Field::Scalar(f) => f.edge_magnitude(),
            Field::Pair(p) => p.edge_magnitude(),
        }
    }

    pub fn as_scalar(&self) -> Result<&GridFunction> {
        match self {
            Field::Scalar(f) => Ok(f),
            Field::Pair(_) => Err(invalid("field", "expected a scalar function")),
        }
    }

    pub fn as_pair(&self) -> Result<&PairFunction> {
        match self {
            Field::Pair(p) => Ok(p),
            Field::Scalar(_) => Err(invalid("field", "expected a pair-valued function")),
        }
    }
}

impl From<GridFunction> for Field {
    fn from(f: GridFunction) -> Self {
        Field::Scalar(f)
    }
}

impl From<PairFunction> for Field {
    fn from(p: PairFunction) -> Self {
        Field::Pair(p)
    }
}
