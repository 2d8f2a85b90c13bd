//! Symbols of dilation-invariant operators from their kernels: an operator
//! with `K(lx, ly) = K(x, y) / l` equals `phi(A)` with
//! `phi(t) = int_0^inf K(1, y) y^{-1/2 + it} dy`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use super::Symbol;
use crate::error::invalid;
use crate::interp::cubic_uniform;
use crate::quad::GaussLegendre;
use crate::specfun::{bessel_j, hankel_pq, xi_symbol};
use crate::{Error, Result, C64, PI};

/// Integrand magnitude below which a tail in `u = ln y` is dropped.
const CUTOFF: f64 = 1e-17;
/// Largest `|u|` searched before the slice is declared non-integrable.
const U_LIMIT: f64 = 400.0;
/// Accepted size of the neglected tail.
const TAIL_TOLERANCE: f64 = 1e-10;
/// Start of the contour rotation for oscillatory Bessel tails.
const Y_SWITCH: f64 = 40.0;
const PANEL_U: f64 = 0.25;
const PANEL_Y: f64 = 0.5;
const PANEL_TAU: f64 = 0.5;
const TAU_MAX: f64 = 60.0;

/// How the slice behaves for large `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailScheme {
    /// `K(1, y) y^{1/2}` decays (exponentially in `u = ln y`) at both ends.
    Algebraic,
    /// `K(1, y) = y^power J_order(y)` beyond [`Y_SWITCH`]; the oscillatory
    /// tail is integrated along `y = Y +- i tau` using the Hankel expansions.
    Bessel { order: f64, power: f64 },
}

type Slice = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// `y -> K(1, y)` with the metadata its Mellin quadrature needs.
#[derive(Clone)]
pub struct KernelSlice {
    pub name: String,
    eval: Slice,
    /// Points in `y` where the slice is not smooth.
    pub breakpoints: Vec<f64>,
    pub tail: TailScheme,
    /// Limits of the resulting symbol at `-inf`, `+inf`, if known.
    pub limits: Option<(C64, C64)>,
    /// Closed form of the symbol, when one is known.
    pub closed_form: Option<Symbol>,
}

impl core::fmt::Debug for KernelSlice {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("KernelSlice").field("name", &self.name).field("tail", &self.tail).finish()
    }
}

impl KernelSlice {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> C64 + Send + Sync + 'static, tail: TailScheme) -> Self {
        KernelSlice { name: name.into(), eval: Arc::new(eval), breakpoints: Vec::new(), tail, limits: None, closed_form: None }
    }

    pub fn eval(&self, y: f64) -> C64 {
        (self.eval)(y)
    }

    /// `K(x, y) = (1/pi) / (x + y)`; symbol `sech(pi t)`.
    pub fn stieltjes() -> Self {
        let mut s = KernelSlice::new("stieltjes", |y| C64::new(1.0 / (PI * (1.0 + y)), 0.0), TailScheme::Algebraic);
        s.limits = Some((C64::new(0.0, 0.0), C64::new(0.0, 0.0)));
        s.closed_form = Some(Symbol::sech_pi(1.0));
        s
    }

    /// `K(x, y) = 1{y < x} / x`; symbol `1 / (1/2 + it)`.
    pub fn hardy() -> Self {
        let mut s = KernelSlice::new(
            "hardy",
            |y| if y < 1.0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) },
            TailScheme::Algebraic,
        );
        s.breakpoints.push(1.0);
        s.limits = Some((C64::new(0.0, 0.0), C64::new(0.0, 0.0)));
        s.closed_form = Some(Symbol::new("1/(1/2+it)", |t| C64::new(0.5, t).inv()));
        s
    }

    /// `K(x, y) = x^{-3/2} y^{1/2} J_m(y/x)`, the kernel of `J H_m`; symbol `Xi_m`.
    pub fn j_hankel(m: f64) -> Self {
        let mut s = KernelSlice::new(
            format!("j_hankel({m})"),
            move |y| C64::new(y.sqrt() * bessel_j(m, y), 0.0),
            TailScheme::Bessel { order: m, power: 0.5 },
        );
        s.closed_form = Some(Symbol::new(format!("Xi_{m}"), move |t| xi_symbol(m, t)));
        s
    }
}

/// Quadrature of `phi(t) = sum_q w_q g_q exp(i t s_q)` plus contour parts.
struct MellinQuadrature {
    /// Nodes `s_q` (a log coordinate) and weighted amplitudes `w_q g_q`.
    real_nodes: Vec<(f64, C64)>,
    /// Contour nodes `z` and weighted amplitudes; contribute `a * z^{it}`.
    complex_nodes: Vec<(C64, C64)>,
    tail: f64,
}

impl MellinQuadrature {
    fn eval(&self, t: f64) -> C64 {
        let mut acc: C64 = self.real_nodes.iter().map(|&(s, a)| a * C64::from_polar(1.0, t * s)).sum();
        for &(z, a) in &self.complex_nodes {
            acc += a * (C64::new(0.0, t) * z.ln()).exp();
        }
        acc
    }
}

/// Walks outward from `start` in unit steps of `u` until `|g(u)| < CUTOFF`
/// times `scale`; returns the cut and the magnitude found there.
fn find_cut(g: &dyn Fn(f64) -> f64, start: f64, dir: f64, scale: f64) -> Result<(f64, f64)> {
    let mut u = start;
    loop {
        let v = g(u);
        if v <= CUTOFF * scale && g(u + dir) <= CUTOFF * scale {
            return Ok((u + dir, v));
        }
        u += dir;
        if u.abs() > U_LIMIT {
            return Err(Error::QuadratureTail {
                estimate: v,
                tolerance: TAIL_TOLERANCE,
                hint: "kernel slice does not decay in log scale; supply a tail scheme",
            });
        }
    }
}

/// Panels of width at most `width` on `[a, b]`, split at `breaks`.
fn panel_nodes(rule: &GaussLegendre, a: f64, b: f64, breaks: &[f64], width: f64, out: &mut Vec<(f64, f64)>) {
    let mut cuts: Vec<f64> = breaks.iter().copied().filter(|&p| p > a && p < b).collect();
    cuts.insert(0, a);
    cuts.push(b);
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        let panels = ((hi - lo) / width).ceil().max(1.0) as usize;
        let h = (hi - lo) / panels as f64;
        for p in 0..panels {
            let mid = lo + (p as f64 + 0.5) * h;
            for (s, w) in rule.nodes.iter().zip(&rule.weights) {
                out.push((mid + 0.5 * h * s, 0.5 * h * w));
            }
        }
    }
}

fn build_quadrature(slice: &KernelSlice) -> Result<MellinQuadrature> {
    let rule = GaussLegendre::new(16);
    let breaks_u: Vec<f64> = slice.breakpoints.iter().filter(|&&y| y > 0.0).map(|y| y.ln()).collect();
    let density = |u: f64| slice.eval(u.exp()) * (0.5 * u).exp();
    let mut real_nodes = Vec::new();
    let mut complex_nodes = Vec::new();
    let mut nodes = Vec::new();
    match slice.tail {
        TailScheme::Algebraic => {
            let mag = |u: f64| density(u).norm();
            let mut scale = 0.0f64;
            for k in -40..=40 {
                scale = scale.max(mag(k as f64 * 0.25));
            }
            for b in &breaks_u {
                scale = scale.max(mag(b - 1e-9)).max(mag(b + 1e-9));
            }
            if !(scale > 0.0) || !scale.is_finite() {
                return Err(invalid("kernel slice", "vanishes or is not finite near y = 1"));
            }
            let (lo, e_lo) = find_cut(&mag, -1.0, -1.0, scale)?;
            let (hi, e_hi) = find_cut(&mag, 1.0, 1.0, scale)?;
            panel_nodes(&rule, lo, hi, &breaks_u, PANEL_U, &mut nodes);
            real_nodes.extend(nodes.iter().map(|&(u, w)| (u, density(u) * w)));
            Ok(MellinQuadrature { real_nodes, complex_nodes, tail: 4.0 * (e_lo + e_hi) })
        }
        TailScheme::Bessel { order, power } => {
            // y in (0, 1]: in u, where K(1,y) y^{1/2} ~ y^{power + 1/2 + order}
            let mag = |u: f64| density(u).norm();
            let (lo, e_lo) = find_cut(&mag, -1.0, -1.0, 1.0)?;
            panel_nodes(&rule, lo, 0.0, &breaks_u, PANEL_U, &mut nodes);
            real_nodes.extend(nodes.iter().map(|&(u, w)| (u, density(u) * w)));
            // y in [1, Y]: in y, the phase y^{it} = e^{it ln y}
            nodes.clear();
            panel_nodes(&rule, 1.0, Y_SWITCH, &[], PANEL_Y, &mut nodes);
            real_nodes.extend(nodes.iter().map(|&(y, w)| (y.ln(), slice.eval(y) * y.powf(-0.5) * w)));
            // y > Y: J = (H1 + H2)/2, each rotated into the half-plane where it decays
            nodes.clear();
            panel_nodes(&rule, 0.0, TAU_MAX, &[], PANEL_TAU, &mut nodes);
            let p = power - 0.5;
            // H1 (sign +1) or H2 (sign -1) times y^p at y = Y + sign i tau
            let hankel = |tau: f64, sign: f64| {
                let z = C64::new(Y_SWITCH, sign * tau);
                let (pp, qq) = hankel_pq(order, z);
                let phase = z - 0.5 * order * PI - 0.25 * PI;
                let amp = (C64::new(2.0 / PI, 0.0) / z).sqrt()
                    * (pp + C64::new(0.0, sign) * qq)
                    * (C64::new(0.0, sign) * phase).exp();
                (z, amp * z.powf(p))
            };
            for &(tau, w) in &nodes {
                for sign in [1.0, -1.0] {
                    let (z, v) = hankel(tau, sign);
                    // dy = +-i dtau, and the 1/2 of J = (H1 + H2)/2
                    complex_nodes.push((z, v * C64::new(0.0, sign) * 0.5 * w));
                }
            }
            let e_hi = hankel(TAU_MAX, 1.0).1.norm() + hankel(TAU_MAX, -1.0).1.norm();
            Ok(MellinQuadrature { real_nodes, complex_nodes, tail: 4.0 * e_lo + e_hi })
        }
    }
}

/// Symbol of the homogeneous operator with kernel slice `y -> K(1, y)`,
/// tabulated on `range` with node spacing `spacing` (at most 0.05) and
/// cubic interpolation in between. Outside the table the declared limits
/// are returned, or the nearest tabulated value if there are none.
pub fn symbol_from_homogeneous_kernel(slice: &KernelSlice, range: (f64, f64), spacing: f64) -> Result<Symbol> {
    let (lo, hi) = range;
    if !(hi > lo) || !(spacing > 0.0) || spacing > 0.05 {
        return Err(invalid("symbol table", "need lo < hi and 0 < spacing <= 0.05"));
    }
    let quad = build_quadrature(slice)?;
    // growth of z^{it} on the contour, e^{|t| pi/2} at worst
    let growth = (0.5 * PI * lo.abs().max(hi.abs())).exp();
    let tail = quad.tail * if quad.complex_nodes.is_empty() { 1.0 } else { growth };
    if !(tail <= TAIL_TOLERANCE) {
        return Err(Error::QuadratureTail {
            estimate: tail,
            tolerance: TAIL_TOLERANCE,
            hint: "narrow the t-range or use a kernel with faster decay",
        });
    }
    // two guard nodes per side keep the cubic stencil inside the table
    let count = ((hi - lo) / spacing).ceil() as usize + 1;
    let t0 = lo - 2.0 * spacing;
    let values: Vec<C64> = (0..count + 4).map(|k| quad.eval(t0 + k as f64 * spacing)).collect();
    let values = Arc::new(values);
    let limits = slice.limits;
    let eval = move |t: f64| {
        if t < lo || t > hi {
            if let Some((minus, plus)) = limits {
                return if t < lo { minus } else { plus };
            }
            let edge = if t < lo { 2 } else { values.len() - 3 };
            return values[edge];
        }
        cubic_uniform(&values, t0, spacing, t)
    };
    let mut sym = Symbol::new(format!("mellin[{}]", slice.name), eval);
    if let Some((minus, plus)) = slice.limits {
        sym = sym.with_limits(minus, plus);
    }
    Ok(sym)
}
