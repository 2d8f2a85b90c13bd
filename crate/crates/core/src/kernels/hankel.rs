//! Oscillatory half-line transforms on log grids by product integration.
//!
//! For `out(x_i) = int K(x_i y) f(y) dy` with `y = e^u` the product `x_i y_q`
//! only depends on `i + q`, so the discretized operator is a Hankel matrix
//! `out_i = sum_q Omega_{i+q} y_q f_q`, applied by FFT. The weights come from
//! integrating `K` exactly against a local cubic interpolant of the data on
//! each cell: by Gauss-Legendre while the kernel is slowly varying on the
//! cell, by Filon moments of `e^{+-i zeta}` with the asymptotic Hankel
//! amplitudes once it oscillates.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::error::invalid;
use crate::fft::hankel_apply;
use crate::grids::{Grid, GridFunction, LogGrid, Measure};
use crate::quad::GaussLegendre;
use crate::specfun::{bessel_j, hankel_pq, minus_i_pow};
use crate::{Error, Result, C64, PI};

/// Relative edge size above which data or output is rejected as truncated.
pub const TAIL_TOLERANCE: f64 = 1e-5;

/// Cells whose phase increment `theta` is below this use Gauss-Legendre.
const THETA_SWITCH: f64 = 0.5;

/// Filon is only used where the Hankel expansion is accurate.
const ZETA_ASYMPTOTIC: f64 = 12.0;

/// Per-cell geometry shared by every kernel on one log grid.
struct CellRule {
    ratio: f64,
    du: f64,
    /// `coef[a][k]`: coefficient of `s^k` in the Lagrange basis `l_a(s)`.
    coef: [[f64; 4]; 4],
    /// Lagrange nodes in the cell coordinate `s in [-1, 1]`.
    nodes: [f64; 4],
    gauss: GaussLegendre,
}

impl CellRule {
    fn new(du: f64) -> Self {
        let r = du.exp();
        // neighbouring log-grid nodes, in the linear coordinate of cell [y, r y]
        let nodes = [-(r + 2.0) / r, -1.0, 1.0, 2.0 * r + 1.0];
        let mut coef = [[0.0; 4]; 4];
        for a in 0..4 {
            let mut poly = [1.0, 0.0, 0.0, 0.0];
            let mut denom = 1.0;
            for b in (0..4).filter(|&b| b != a) {
                // poly *= (s - nodes[b])
                let mut next = [0.0; 4];
                for k in 0..4 {
                    if k + 1 < 4 {
                        next[k + 1] += poly[k];
                    }
                    next[k] -= poly[k] * nodes[b];
                }
                poly = next;
                denom *= nodes[a] - nodes[b];
            }
            for k in 0..4 {
                coef[a][k] = poly[k] / denom;
            }
        }
        CellRule { ratio: r, du, coef, nodes, gauss: GaussLegendre::new(8) }
    }

    fn lagrange(&self, a: usize, s: f64) -> f64 {
        let c = &self.coef[a];
        c[0] + s * (c[1] + s * (c[2] + s * c[3]))
    }

    /// `int_{-1}^{1} l_a(s) e^{i theta s} ds` for `a = 0..4`.
    fn filon(&self, theta: f64) -> [C64; 4] {
        let m = moments(theta);
        let mut out = [C64::new(0.0, 0.0); 4];
        for (a, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| m[k] * self.coef[a][k]).sum();
        }
        out
    }

    /// `zeta` at cell coordinate `s` for the cell `[z, r z]`.
    fn zeta(&self, z: f64, s: f64) -> f64 {
        z * (1.0 + (self.ratio - 1.0) * (s + 1.0) / 2.0)
    }

    /// Cell weights `c_a(z)` for a kernel given by pointwise values and, on
    /// oscillating cells, by amplitudes `(A+, A-)` with `K = A+ e^{i zeta} + A- e^{-i zeta}`.
    fn weights(&self, z: f64, kernel: &impl Fn(f64) -> C64, amplitudes: &impl Fn(f64) -> (C64, C64), oscillatory_only: bool) -> [C64; 4] {
        let half = (self.ratio - 1.0) / 2.0;
        let theta = z * half;
        let mut out = [C64::new(0.0, 0.0); 4];
        let filon = oscillatory_only || (theta > THETA_SWITCH && z >= ZETA_ASYMPTOTIC);
        if !filon {
            for (s, w) in self.gauss.nodes.iter().zip(&self.gauss.weights) {
                let k = kernel(self.zeta(z, *s)) * *w;
                for (a, o) in out.iter_mut().enumerate() {
                    *o += k * self.lagrange(a, *s);
                }
            }
        } else {
            let centre = z * (1.0 + self.ratio) / 2.0;
            let plus = self.filon(theta);
            let minus = self.filon(-theta);
            let ep = C64::from_polar(1.0, centre);
            for a in 0..4 {
                let (ap, am) = amplitudes(self.zeta(z, self.nodes[a]));
                out[a] = ap * ep * plus[a] + am * ep.conj() * minus[a];
            }
        }
        for o in out.iter_mut() {
            *o *= half;
        }
        out
    }

    /// `Omega_p = sum_a e^{(1-a) du} c_a(z_{p+2-a})`, `z_k = exp(2 u_0 + k du)`.
    fn omega(&self, u0: f64, n: usize, cell: impl Fn(f64) -> [C64; 4]) -> Vec<C64> {
        // z_k for k in -1..=2n
        let table: Vec<[C64; 4]> = (0..2 * n + 2).map(|k| cell((2.0 * u0 + (k as f64 - 1.0) * self.du).exp())).collect();
        (0..2 * n - 1)
            .map(|p| {
                (0..4)
                    .map(|a| table[p + 3 - a][a] * ((1.0 - a as f64) * self.du).exp())
                    .sum::<C64>()
            })
            .collect()
    }
}

/// `M_k(theta) = int_{-1}^{1} s^k e^{i theta s} ds`, `k < 4`.
fn moments(theta: f64) -> [C64; 4] {
    let mut m = [C64::new(0.0, 0.0); 4];
    if theta.abs() < 1.0 {
        for (k, mk) in m.iter_mut().enumerate() {
            let mut term = C64::new(1.0, 0.0);
            for j in 0..30 {
                if (k + j) % 2 == 0 {
                    *mk += term * (2.0 / (k + j + 1) as f64);
                }
                term = term * C64::new(0.0, theta) / (j + 1) as f64;
            }
        }
    } else {
        let e = C64::from_polar(1.0, theta);
        let it = C64::new(0.0, theta);
        let mut prev = (e - e.conj()) / it;
        m[0] = prev;
        for k in 1..4 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let cur = (e - e.conj() * sign) / it - prev * (k as f64) / it;
            m[k] = cur;
            prev = cur;
        }
    }
    m
}

fn check_log(f: &GridFunction, grid: LogGrid, measure: Measure) -> Result<()> {
    if f.grid() != Grid::Log(grid) || f.measure() != measure {
        return Err(Error::GridMismatch);
    }
    Ok(())
}

fn check_tail(f: &GridFunction, what: &'static str) -> Result<()> {
    let norm = f.norm();
    if norm == 0.0 {
        return Ok(());
    }
    let estimate = f.edge_magnitude() / norm;
    if !(estimate <= TAIL_TOLERANCE) {
        return Err(Error::QuadratureTail { estimate, tolerance: TAIL_TOLERANCE, hint: what });
    }
    Ok(())
}

/// `[H_m f](x) = int_0^inf sqrt(xy) J_m(xy) f(y) dy` on a log grid.
#[derive(Debug, Clone)]
pub struct HankelOperator {
    order: f64,
    grid: LogGrid,
    omega: Vec<C64>,
}

impl HankelOperator {
    /// Orders `m >= 0`.
    pub fn new(order: f64, grid: LogGrid) -> Result<Self> {
        if !(order >= 0.0) || !order.is_finite() {
            return Err(invalid("order", "Hankel orders must be >= 0"));
        }
        let rule = CellRule::new(grid.u.dx);
        let kernel = |zeta: f64| C64::new(zeta.sqrt() * bessel_j(order, zeta), 0.0);
        let phase = 0.5 * order * PI + 0.25 * PI;
        let amplitudes = |zeta: f64| {
            let (p, q) = hankel_pq(order, C64::new(zeta, 0.0));
            let c = 0.5 * (2.0 / PI).sqrt();
            let plus = (p + C64::new(0.0, 1.0) * q) * C64::from_polar(c, -phase);
            let minus = (p - C64::new(0.0, 1.0) * q) * C64::from_polar(c, phase);
            (plus, minus)
        };
        let omega = rule.omega(grid.u.lower(), grid.len(), |z| rule.weights(z, &kernel, &amplitudes, false));
        if let Some(j) = omega.iter().position(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(Error::NonFinite { what: "Hankel weight", index: j });
        }
        Ok(HankelOperator { order, grid, omega })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn grid(&self) -> LogGrid {
        self.grid
    }

    /// Raw product `sum_q Omega_{i+q} y_q f_q`, no checks.
    fn correlate(&self, values: &[C64]) -> Vec<C64> {
        let yf: Vec<C64> = values.iter().enumerate().map(|(q, v)| v * self.grid.point(q)).collect();
        hankel_apply(&self.omega, &yf)
    }

    /// Rejects data or output that has not decayed at the log-grid ends.
    pub fn apply(&self, f: &GridFunction) -> Result<GridFunction> {
        check_log(f, self.grid, Measure::Lebesgue)?;
        check_tail(f, "input does not decay inside the log window; enlarge U")?;
        let out = f.with_values(self.correlate(f.values()))?;
        check_tail(&out, "output does not decay inside the log window; enlarge U")?;
        Ok(out)
    }
}

/// `H_m f` for a single application.
pub fn hankel(order: f64, f: &GridFunction) -> Result<GridFunction> {
    match f.grid() {
        Grid::Log(g) => HankelOperator::new(order, g)?.apply(f),
        _ => Err(Error::GridMismatch),
    }
}

/// `[J f](x) = f(1/x) / x` on a log grid symmetric in `u`. Node `j` pairs
/// with node `n - 1 - j`; `1/x_j` is taken as `x_{n-1-j}` so the map is an
/// involution up to one rounding.
pub fn inversion_j(f: &GridFunction) -> Result<GridFunction> {
    let g = match f.grid() {
        Grid::Log(g) => g,
        _ => return Err(Error::GridMismatch),
    };
    if !g.is_symmetric() || f.measure() != Measure::Lebesgue {
        return Err(Error::AsymmetricGrid);
    }
    let n = g.len();
    let half = n as f64 / 2.0;
    // u_j measured from the centre, exactly antisymmetric under j -> n-1-j
    let x = |j: usize| ((j as f64 + 0.5 - half) * g.u.dx).exp();
    let values = (0..n).map(|j| f.values()[n - 1 - j] * x(n - 1 - j)).collect();
    f.with_values(values)
}

/// The radial Fourier transform on angular momentum `l`, acting in
/// `L^2(R_+, r^2 dr)`: `F_l g = (-i)^l H_{l+1/2}(r g) / r`.
#[derive(Debug, Clone)]
pub struct SphericalFourier {
    ell: u32,
    hankel: HankelOperator,
}

impl SphericalFourier {
    pub fn new(ell: u32, grid: LogGrid) -> Result<Self> {
        Ok(SphericalFourier { ell, hankel: HankelOperator::new(ell as f64 + 0.5, grid)? })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn grid(&self) -> LogGrid {
        self.hankel.grid
    }

    pub fn apply(&self, g: &GridFunction) -> Result<GridFunction> {
        let grid = self.hankel.grid;
        check_log(g, grid, Measure::RadialSquared)?;
        check_tail(g, "input does not decay inside the log window; enlarge the window")?;
        let rg: Vec<C64> = g.values().iter().enumerate().map(|(j, v)| v * grid.point(j)).collect();
        let phase = minus_i_pow(self.ell);
        let out = self.hankel.correlate(&rg).iter().enumerate().map(|(j, v)| v * phase / grid.point(j)).collect();
        let out = g.with_values(out)?;
        check_tail(&out, "output does not decay inside the log window; enlarge the window")?;
        Ok(out)
    }
}

pub fn fourier_sph(ell: u32, g: &GridFunction) -> Result<GridFunction> {
    match g.grid() {
        Grid::Log(grid) => SphericalFourier::new(ell, grid)?.apply(g),
        _ => Err(Error::GridMismatch),
    }
}

/// `[T_l g](r) = -i (2 pi)^{-1/2} int_0^inf e^{i kappa r} / (kappa r) [F_l g](kappa) kappa^2 dkappa`.
#[derive(Debug, Clone)]
pub struct T3dOperator {
    fourier: SphericalFourier,
    omega: Vec<C64>,
}

impl T3dOperator {
    pub fn new(ell: u32, grid: LogGrid) -> Result<Self> {
        let fourier = SphericalFourier::new(ell, grid)?;
        let rule = CellRule::new(grid.u.dx);
        let kernel = |zeta: f64| C64::from_polar(1.0, zeta);
        let amplitudes = |_: f64| (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
        let omega = rule.omega(grid.u.lower(), grid.len(), |z| rule.weights(z, &kernel, &amplitudes, true));
        Ok(T3dOperator { fourier, omega })
    }

    pub fn ell(&self) -> u32 {
        self.fourier.ell
    }

    pub fn apply(&self, g: &GridFunction) -> Result<GridFunction> {
        let grid = self.fourier.grid();
        let spectral = self.fourier.apply(g)?;
        // kappa ghat(kappa), times y_q for the product rule
        let data: Vec<C64> = spectral
            .values()
            .iter()
            .enumerate()
            .map(|(q, v)| {
                let k = grid.point(q);
                v * k * k
            })
            .collect();
        let c = hankel_apply(&self.omega, &data);
        let scale = C64::new(0.0, -1.0 / (2.0 * PI).sqrt());
        let out = c.iter().enumerate().map(|(i, v)| v * scale / grid.point(i)).collect();
        let out = g.with_values(out)?;
        check_tail(&out, "output does not decay inside the log window; enlarge the window")?;
        Ok(out)
    }
}

pub fn t3d_kernel(ell: u32, g: &GridFunction) -> Result<GridFunction> {
    match g.grid() {
        Grid::Log(grid) => T3dOperator::new(ell, grid)?.apply(g),
        _ => Err(Error::GridMismatch),
    }
}
