//! Spectral multipliers and the two engines that apply them: the Fourier
//! transform, diagonalizing `D = -i d/dx` on the line, and the Mellin
//! transform, diagonalizing the dilation generator `A` on the half-line.
//!
//! Conventions: `[F f](k) = (2 pi)^{-1/2} int e^{-ikx} f(x) dx`, and
//! `(e^{isA} f)(x) = e^{s/2} f(e^s x)`. Under the Mellin engine the
//! eigenfunction `x^{-1/2 + it}` of `A` sits at spectral value `t`.

mod fourier;
mod homogeneous;
mod mellin;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;


use crate::specfun;
use crate::{Error, Result, C64};

pub use fourier::FourierEngine;
pub use homogeneous::{symbol_from_homogeneous_kernel, KernelSlice, TailScheme};
pub use mellin::{MellinEngine, MELLIN_ORIENTATION};

type Eval = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// Distance from a declared limit tolerated at `|t| = LIMIT_PROBE`.
pub const LIMIT_TOLERANCE: f64 = 1e-2;
pub const LIMIT_PROBE: f64 = 1e3;

/// A scalar multiplier `t -> sym(t)` with optional limits at `-inf`, `+inf`.
#[derive(Clone)]
pub struct Symbol {
    name: String,
    eval: Eval,
    limit_minus: Option<C64>,
    limit_plus: Option<C64>,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol")
            .field("name", &self.name)
            .field("limit_minus", &self.limit_minus)
            .field("limit_plus", &self.limit_plus)
            .finish()
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

impl Symbol {
    pub fn new(name: impl Into<String>, eval: impl Fn(f64) -> C64 + Send + Sync + 'static) -> Self {
        Symbol { name: name.into(), eval: Arc::new(eval), limit_minus: None, limit_plus: None }
    }

    pub fn with_limits(mut self, minus: C64, plus: C64) -> Self {
        self.limit_minus = Some(minus);
        self.limit_plus = Some(plus);
        self
    }

    pub fn eval(&self, t: f64) -> C64 {
        (self.eval)(t)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn limits(&self) -> (Option<C64>, Option<C64>) {
        (self.limit_minus, self.limit_plus)
    }

    /// Declared limits are approached: within [`LIMIT_TOLERANCE`] at
    /// `t = -+LIMIT_PROBE`.
    pub fn check_limits(&self) -> Result<()> {
        for (limit, t) in [(self.limit_minus, -LIMIT_PROBE), (self.limit_plus, LIMIT_PROBE)] {
            if let Some(l) = limit {
                let d = (self.eval(t) - l).norm();
                if !(d <= LIMIT_TOLERANCE) {
                    return Err(Error::InvalidParameter {
                        name: "symbol",
                        reason: format!("{} is {d:.3e} away from its limit at t = {t}", self.name),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn constant(value: C64) -> Self {
        Symbol::new(format!("{value}"), move |_| value).with_limits(value, value)
    }

    pub fn one() -> Self {
        Symbol::constant(c(1.0, 0.0))
    }

    /// Identically zero; evaluates to an exact `0`.
    pub fn zero() -> Self {
        Symbol::constant(c(0.0, 0.0))
    }

    /// Pointwise product; limits multiply when both are declared.
    pub fn product(&self, other: &Symbol) -> Symbol {
        let (a, b) = (self.eval.clone(), other.eval.clone());
        let mut out = Symbol::new(format!("{}*{}", self.name, other.name), move |t| a(t) * b(t));
        out.limit_minus = self.limit_minus.zip(other.limit_minus).map(|(x, y)| x * y);
        out.limit_plus = self.limit_plus.zip(other.limit_plus).map(|(x, y)| x * y);
        out
    }

    /// `t -> sym(-t)`.
    pub fn reflected(&self) -> Symbol {
        let a = self.eval.clone();
        let mut out = Symbol::new(format!("{}(-t)", self.name), move |t| a(-t));
        out.limit_minus = self.limit_plus;
        out.limit_plus = self.limit_minus;
        out
    }

    /// `t -> 1 / sym(t)`.
    pub fn reciprocal(&self) -> Symbol {
        let a = self.eval.clone();
        let mut out = Symbol::new(format!("1/{}", self.name), move |t| a(t).inv());
        out.limit_minus = self.limit_minus.map(|v| v.inv());
        out.limit_plus = self.limit_plus.map(|v| v.inv());
        out
    }

    /// `t -> alpha sym(t)`.
    pub fn scaled(&self, alpha: C64) -> Symbol {
        let a = self.eval.clone();
        let mut out = Symbol::new(format!("({alpha})*{}", self.name), move |t| a(t) * alpha);
        out.limit_minus = self.limit_minus.map(|v| v * alpha);
        out.limit_plus = self.limit_plus.map(|v| v * alpha);
        out
    }

    /// `-i sign(k)`, the Hilbert transform as a multiplier of `D`.
    pub fn hilbert() -> Self {
        Symbol::new("-i sign", |k| {
            if k > 0.0 {
                c(0.0, -1.0)
            } else if k < 0.0 {
                c(0.0, 1.0)
            } else {
                c(0.0, 0.0)
            }
        })
        .with_limits(c(0.0, 1.0), c(0.0, -1.0))
    }

    /// `tanh(pi t / 2)`.
    pub fn tanh_pi_half() -> Self {
        Symbol::new("tanh(pi t/2)", |t| c(specfun::tanh_pi(0.5 * t), 0.0)).with_limits(c(-1.0, 0.0), c(1.0, 0.0))
    }

    /// `-i tanh(pi t / 2)`.
    pub fn finite_hilbert() -> Self {
        Symbol::tanh_pi_half().scaled(c(0.0, -1.0))
    }

    /// `tanh(pi s t)`.
    pub fn tanh_pi(s: f64) -> Self {
        Symbol::new(format!("tanh({s} pi t)"), move |t| c(specfun::tanh_pi(s * t), 0.0))
            .with_limits(c(-1.0, 0.0), c(1.0, 0.0))
    }

    /// `sech(pi s t)`.
    pub fn sech_pi(s: f64) -> Self {
        Symbol::new(format!("sech({s} pi t)"), move |t| c(specfun::sech_pi(s * t), 0.0))
            .with_limits(c(0.0, 0.0), c(0.0, 0.0))
    }

    /// `tanh(pi t) + sigma i sech(pi t)` for `sigma = +-1`, the off-diagonal
    /// entries of the even/odd Hilbert resolution.
    pub fn tanh_sech(sigma: f64) -> Self {
        Symbol::new(format!("tanh(pi t) {} i sech(pi t)", if sigma > 0.0 { "+" } else { "-" }), move |t| {
            c(specfun::tanh_pi(t), sigma * specfun::sech_pi(t))
        })
        .with_limits(c(-1.0, 0.0), c(1.0, 0.0))
    }

    /// `i (tanh(2 pi t) + sigma i sech(2 pi t))`, the diagonal entries of
    /// the Dirac resolution.
    pub fn dirac(sigma: f64) -> Self {
        Symbol::new(format!("i(tanh(2 pi t) {} i sech(2 pi t))", if sigma > 0.0 { "+" } else { "-" }), move |t| {
            c(-sigma * specfun::sech_pi(2.0 * t), specfun::tanh_pi(2.0 * t))
        })
        .with_limits(c(0.0, -1.0), c(0.0, 1.0))
    }

    /// `Xi_m(t)`; unit modulus, no limits.
    pub fn xi(m: f64) -> Self {
        Symbol::new(format!("Xi_{m}"), move |t| specfun::xi_symbol(m, t))
    }

    /// `phi_l(t)` with limits 0 and 1.
    pub fn phi(ell: u32) -> Self {
        Symbol::new(format!("phi_{ell}"), move |t| specfun::phi_ell(ell, t)).with_limits(c(0.0, 0.0), c(1.0, 0.0))
    }

    /// The closed form `phi_0(t) = (1 + tanh(pi t) - i sech(pi t)) / 2`.
    pub fn phi_zero() -> Self {
        Symbol::new("phi_0 closed form", specfun::phi_zero).with_limits(c(0.0, 0.0), c(1.0, 0.0))
    }
}

/// A 2x2 matrix of scalar symbols acting on pair-valued functions.
#[derive(Clone, Debug)]
pub struct MatrixSymbol {
    pub entries: [[Symbol; 2]; 2],
}

impl MatrixSymbol {
    pub fn new(a11: Symbol, a12: Symbol, a21: Symbol, a22: Symbol) -> Self {
        MatrixSymbol { entries: [[a11, a12], [a21, a22]] }
    }

    pub fn diagonal(a11: Symbol, a22: Symbol) -> Self {
        MatrixSymbol::new(a11, Symbol::zero(), Symbol::zero(), a22)
    }

    pub fn eval(&self, t: f64) -> [[C64; 2]; 2] {
        let e = &self.entries;
        [[e[0][0].eval(t), e[0][1].eval(t)], [e[1][0].eval(t), e[1][1].eval(t)]]
    }

    /// `-i [[0, tanh(pi t) - i sech(pi t)], [tanh(pi t) + i sech(pi t), 0]]`.
    pub fn even_odd_hilbert() -> Self {
        let minus_i = c(0.0, -1.0);
        MatrixSymbol::new(
            Symbol::zero(),
            Symbol::tanh_sech(-1.0).scaled(minus_i),
            Symbol::tanh_sech(1.0).scaled(minus_i),
            Symbol::zero(),
        )
    }
}

/// Samples a symbol on spectral nodes, rejecting non-finite values.
pub(crate) fn sample_symbol(sym: &Symbol, nodes: impl Iterator<Item = f64>) -> Result<alloc::vec::Vec<C64>> {
    nodes
        .enumerate()
        .map(|(index, t)| {
            let v = sym.eval(t);
            if v.re.is_finite() && v.im.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFinite { what: "symbol value", index })
            }
        })
        .collect()
}
