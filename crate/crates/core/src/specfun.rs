//! Special functions behind the resolutions: log-Gamma on the complex
//! plane, Bessel `J_nu` for real order and argument, Hankel asymptotic
//! amplitudes, the unit-modulus symbols `Xi_m` and `phi_l`, and the
//! weights `b_+`, `b_-`.

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::error::invalid;
use crate::{Error, Result, C64, PI};

const LN_2PI_HALF: f64 = 0.918_938_533_204_672_8;
const LN_2: f64 = core::f64::consts::LN_2;

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Orders and masses shared by the symbol families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolParams {
    /// Hankel order, real and `> -1`.
    pub m: f64,
    /// Angular momentum.
    pub ell: u32,
    /// Dirac mass, `> 0`.
    pub mass: f64,
}

impl SymbolParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.m > -1.0) || !self.m.is_finite() {
            return Err(invalid("m", "Hankel order must be a real number > -1"));
        }
        if !(self.mass > 0.0) || !self.mass.is_finite() {
            return Err(invalid("mass", "must be a positive real number"));
        }
        Ok(())
    }
}

impl Default for SymbolParams {
    fn default() -> Self {
        SymbolParams { m: 0.0, ell: 0, mass: 1.0 }
    }
}

/// Principal branch of `ln Gamma(z)`, continuous on the plane cut along
/// the negative real axis.
///
/// The argument is shifted right by the recurrence until the Stirling
/// series is accurate (`Re w >= 0.5`, `|w| >= 12`), so the same code path
/// serves the left half-plane.
pub fn log_gamma(z: C64) -> Result<C64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite { what: "log-gamma argument", index: 0 });
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { re: z.re });
    }
    let mut w = z;
    let mut shift = C64::new(0.0, 0.0);
    while w.re < 0.5 || w.norm() < 12.0 {
        shift += w.ln();
        w += 1.0;
    }
    Ok(stirling(w) - shift)
}

fn stirling(w: C64) -> C64 {
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = C64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + LN_2PI_HALF + series
}

/// `Im ln Gamma(a + i b)` for `a > 0`, the phase of a conjugate-pair ratio:
/// `Gamma(a + ib) / Gamma(a - ib) = exp(2 i gamma_phase(a, b))`.
pub fn gamma_phase(a: f64, b: f64) -> f64 {
    debug_assert!(a > 0.0);
    match log_gamma(C64::new(a, b)) {
        Ok(v) => v.im,
        Err(_) => f64::NAN,
    }
}

/// Bessel function of the first kind, `nu >= 0`, `x >= 0`.
///
/// Power series for `x <= 12` or `x <= nu`; otherwise the large-argument
/// expansion at orders `frac(nu)` and `frac(nu) + 1` followed by upward
/// recurrence, which is stable while the order stays below `x`.
pub fn bessel_j(nu: f64, x: f64) -> f64 {
    if !(nu >= 0.0) || !(x >= 0.0) {
        return f64::NAN;
    }
    if x == 0.0 {
        return if nu == 0.0 { 1.0 } else { 0.0 };
    }
    if x <= 12.0 || x <= nu {
        return bessel_series(nu, x);
    }
    let nu0 = nu - nu.floor();
    let steps = nu.floor() as usize;
    let mut j0 = bessel_asymptotic(nu0, x);
    if steps == 0 {
        return j0;
    }
    let mut j1 = bessel_asymptotic(nu0 + 1.0, x);
    for k in 1..steps {
        let next = 2.0 * (nu0 + k as f64) / x * j1 - j0;
        j0 = j1;
        j1 = next;
    }
    j1
}

fn bessel_series(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let lead = match log_gamma(C64::new(nu + 1.0, 0.0)) {
        Ok(lg) => (nu * half.ln() - lg.re).exp(),
        Err(_) => return f64::NAN,
    };
    let q = -half * half;
    let mut term = lead;
    let mut sum = lead;
    for k in 1..500 {
        let k = k as f64;
        term *= q / (k * (k + nu));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() && k > half {
            break;
        }
    }
    sum
}

fn bessel_asymptotic(nu: f64, x: f64) -> f64 {
    let (p, q) = hankel_pq(nu, C64::new(x, 0.0));
    let omega = x - 0.5 * nu * PI - 0.25 * PI;
    (2.0 / (PI * x)).sqrt() * (p.re * omega.cos() - q.re * omega.sin())
}

/// Amplitudes of the large-argument expansion,
/// `H^(1)_nu(z) = sqrt(2 / (pi z)) (P + iQ) exp(i(z - nu pi/2 - pi/4))`,
/// `H^(2)` with `P - iQ` and the conjugate phase. Summed to the smallest
/// term; the truncation error is below `1e-12` for `|z| > 12` and orders below 2.
pub fn hankel_pq(nu: f64, z: C64) -> (C64, C64) {
    let mu = 4.0 * nu * nu;
    let inv = z.inv() / 8.0;
    let mut p = C64::new(1.0, 0.0);
    let mut q = C64::new(0.0, 0.0);
    let mut term = C64::new(1.0, 0.0);
    let mut last = f64::INFINITY;
    for k in 1..80 {
        let odd = (2 * k - 1) as f64;
        term = term * (mu - odd * odd) * inv / k as f64;
        let size = term.norm();
        if size > last || size == 0.0 {
            break;
        }
        last = size;
        // a_k z^-k enters P (even k) or Q (odd k) with sign (-1)^floor(k/2)
        let signed = if (k / 2) % 2 == 0 { term } else { -term };
        if k % 2 == 0 {
            p += signed;
        } else {
            q += signed;
        }
        if size < 1e-17 {
            break;
        }
    }
    (p, q)
}

/// `Xi_m(t) = exp(i t ln 2) Gamma((m + 1 + it)/2) / Gamma((m + 1 - it)/2)`.
pub fn xi_symbol(m: f64, t: f64) -> C64 {
    let phase = t * LN_2 + 2.0 * gamma_phase(0.5 * (m + 1.0), 0.5 * t);
    C64::from_polar(1.0, phase)
}

/// `Xi_m(-t) Xi_mp(t)`, the symbol of a composition of two Hankel
/// transforms of different order.
pub fn xi_product(m: f64, mp: f64, t: f64) -> C64 {
    xi_symbol(m, -t) * xi_symbol(mp, t)
}

/// Limit of [`xi_product`] at `t -> +inf` (`sign > 0`) or `-inf`.
pub fn xi_product_limit(m: f64, mp: f64, sign: f64) -> C64 {
    C64::from_polar(1.0, -sign.signum() * 0.5 * PI * (m - mp))
}

/// `(-i)^l` without rounding.
pub fn minus_i_pow(ell: u32) -> C64 {
    match ell % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, -1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, 1.0),
    }
}

/// The multiplier `phi_l` with `T_l = phi_l(A)` on the angular momentum `l`
/// subspace:
/// `phi_l(x) = 1/2 e^{-i pi l/2} G(l) (1 + tanh(pi x) - i sech(pi x))`, where
/// `G(l) = [Gamma((l+3/2+ix)/2)/Gamma((l+3/2-ix)/2)] [Gamma((3/2-ix)/2)/Gamma((3/2+ix)/2)]`.
pub fn phi_ell(ell: u32, x: f64) -> C64 {
    let b = 0.5 * x;
    let phase = 2.0 * gamma_phase(0.5 * (ell as f64 + 1.5), b) - 2.0 * gamma_phase(0.75, b);
    minus_i_pow(ell) * C64::from_polar(1.0, phase) * phi_zero(x)
}

/// `phi_0(x) = (1 + tanh(pi x) - i sech(pi x)) / 2`.
pub fn phi_zero(x: f64) -> C64 {
    C64::new(0.5 * (1.0 + tanh_pi(x)), -0.5 * sech_pi(x))
}

/// `tanh(pi x)`, saturating to `+-1` without overflow.
pub fn tanh_pi(x: f64) -> f64 {
    (PI * x).tanh()
}

/// `1 / cosh(pi x)`, evaluated through `exp(-pi |x|)`; exactly 0 once that
/// underflows.
pub fn sech_pi(x: f64) -> f64 {
    let e = (-PI * x.abs()).exp();
    2.0 * e / (1.0 + e * e)
}

/// `b_+(x) = (e^{x/2} + e^{-x/2}) / (e^x + e^{-x})^{1/2}`.
pub fn b_plus(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    (1.0 + e) / (1.0 + e * e).sqrt()
}

/// `b_-(x) = (e^{x/2} - e^{-x/2}) / (e^x + e^{-x})^{1/2}`.
pub fn b_minus(x: f64) -> f64 {
    let e = (-x.abs()).exp();
    x.signum() * (1.0 - e) / (1.0 + e * e).sqrt()
}
