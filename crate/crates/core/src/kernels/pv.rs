//! Cauchy principal values on uniform cell-centered grids.
//!
//! For nodes `lambda_i = a + (i + 1/2) h` on `(a, b)` the value
//! `(1/pi) P.v. int f(mu) / (lambda_i - mu) dmu` is split as
//! `int (f(mu) - f(lambda_i)) / (lambda_i - mu) dmu + f(lambda_i) ln((lambda_i - a)/(b - lambda_i))`.
//! The regular part is summed with the midpoint rule; its value at the
//! diagonal node is `-f'(lambda_i)`. The off-diagonal sum is a Toeplitz
//! product evaluated by FFT.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::error::invalid;
use crate::fft::toeplitz_apply;
use crate::grids::{Branch, Grid, GridFunction, PairFunction, SplitGrid};
use crate::{Error, Result, C64, PI};

/// Fraction of a domain at each end that must be free of data when the
/// kernel carries a weight that is singular there.
pub const EDGE_BAND: f64 = 0.01;

/// Relative size above which data inside the edge band is rejected.
pub const EDGE_THRESHOLD: f64 = 1e-12;

/// Derivative at every node times `h`: five-point central differences in
/// the bulk, five-point one-sided stencils at the two outer nodes per side.
fn derivative_times_h(f: &[C64]) -> Vec<C64> {
    let n = f.len();
    let mut d = vec![C64::new(0.0, 0.0); n];
    for i in 2..n - 2 {
        d[i] = (f[i - 2] - f[i - 1] * 8.0 + f[i + 1] * 8.0 - f[i + 2]) / 12.0;
    }
    d[0] = (f[0] * -25.0 + f[1] * 48.0 - f[2] * 36.0 + f[3] * 16.0 - f[4] * 3.0) / 12.0;
    d[1] = (f[0] * -3.0 - f[1] * 10.0 + f[2] * 18.0 - f[3] * 6.0 + f[4]) / 12.0;
    let e = n - 1;
    d[e] = (f[e] * 25.0 - f[e - 1] * 48.0 + f[e - 2] * 36.0 - f[e - 3] * 16.0 + f[e - 4] * 3.0) / 12.0;
    d[e - 1] = (f[e] * 3.0 + f[e - 1] * 10.0 - f[e - 2] * 18.0 + f[e - 3] * 6.0 - f[e - 4]) / 12.0;
    d
}

/// `H_k = 1 + 1/2 + ... + 1/k`, `H_0 = 0`, for `k < n`.
fn harmonic(n: usize) -> Vec<f64> {
    let mut h = vec![0.0; n];
    for k in 1..n {
        h[k] = h[k - 1] + 1.0 / k as f64;
    }
    h
}

fn check_len(n: usize) -> Result<()> {
    if n < 8 {
        return Err(invalid("grid", "principal values need at least 8 nodes"));
    }
    Ok(())
}

/// `(1/pi) P.v. int_a^b f(mu) / (lambda_i - mu) dmu` at every node, from
/// samples `f` on a cell-centered grid of `(a, b)`. The spacing cancels.
pub fn cauchy_pv(f: &[C64]) -> Result<Vec<C64>> {
    let n = f.len();
    check_len(n)?;
    let kernel: Vec<C64> = (0..2 * n - 1)
        .map(|p| {
            let k = p as f64 - (n - 1) as f64;
            C64::new(if k == 0.0 { 0.0 } else { 1.0 / k }, 0.0)
        })
        .collect();
    let conv = toeplitz_apply(&kernel, f);
    Ok(assemble(f, &conv))
}

/// Quadratic-cost evaluation of [`cauchy_pv`] by explicit summation.
pub fn cauchy_pv_direct(f: &[C64]) -> Result<Vec<C64>> {
    let n = f.len();
    check_len(n)?;
    let conv: Vec<C64> = (0..n)
        .map(|i| {
            (0..n).filter(|&j| j != i).map(|j| f[j] / (i as f64 - j as f64)).sum::<C64>()
        })
        .collect();
    Ok(assemble(f, &conv))
}

fn assemble(f: &[C64], conv: &[C64]) -> Vec<C64> {
    let n = f.len();
    let hn = harmonic(n);
    let d = derivative_times_h(f);
    (0..n)
        .map(|i| {
            let s = hn[i] - hn[n - 1 - i];
            let log = ((i as f64 + 0.5) / (n as f64 - i as f64 - 0.5)).ln();
            (conv[i] - f[i] * s - d[i] + f[i] * log) / PI
        })
        .collect()
}

/// `(1/pi) P.v. int f(y) / (x - y) dy` over the window of a line grid.
pub fn hilbert_pv(f: &GridFunction) -> Result<GridFunction> {
    match f.grid() {
        Grid::Line(_) => f.with_values(cauchy_pv(f.values())?),
        _ => Err(Error::GridMismatch),
    }
}

/// `(1/pi) P.v. int_a^b f(mu) / (lambda - mu) dmu` on an interval grid.
pub fn finite_hilbert(f: &GridFunction) -> Result<GridFunction> {
    match f.grid() {
        Grid::Interval(_) => f.with_values(cauchy_pv(f.values())?),
        _ => Err(Error::GridMismatch),
    }
}

/// `beta(lambda) = (4 - lambda^2)^{1/4}`.
pub fn beta(lambda: f64) -> f64 {
    (4.0 - lambda * lambda).max(0.0).powf(0.25)
}

fn check_edges(values: &[C64], band: usize, what: &str) -> Result<()> {
    let peak = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let n = values.len();
    for j in (0..band).chain(n - band..n) {
        if values[j].norm() > EDGE_THRESHOLD * peak {
            return Err(invalid("support", alloc::format!("data reaches the {what} at node {j}")));
        }
    }
    Ok(())
}

fn band_nodes(n: usize) -> usize {
    ((EDGE_BAND * n as f64).ceil() as usize).max(1)
}

/// `(1/(2 pi i)) P.v. int_{-2}^{2} beta(lambda) (lambda - mu)^{-1} beta(mu)^{-1} f(mu) dmu`.
///
/// Data must vanish in the outer [`EDGE_BAND`] of `(-2, 2)` where `1/beta`
/// blows up.
pub fn weighted_finite_hilbert(f: &GridFunction) -> Result<GridFunction> {
    let g = match f.grid() {
        Grid::Interval(g) if g.a == -2.0 && g.b == 2.0 => g,
        _ => return Err(Error::GridMismatch),
    };
    check_edges(f.values(), band_nodes(f.len()), "weight singularity at +-2")?;
    let reg: Vec<C64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let b = beta(g.cells.point(j));
            if v.norm() == 0.0 {
                C64::new(0.0, 0.0)
            } else {
                v / b
            }
        })
        .collect();
    let p = cauchy_pv(&reg)?;
    let out = p.iter().enumerate().map(|(j, v)| v * beta(g.cells.point(j)) / C64::new(0.0, 2.0)).collect();
    f.with_values(out)
}

/// Diagonal entries of `B(lambda)`:
/// `(1/sqrt 2) ((lambda - m)/(lambda + m))^{1/4}` and its inverse times `1/2`.
pub fn dirac_weights(mass: f64, lambda: f64) -> (f64, f64) {
    let q = ((lambda - mass) / (lambda + mass)).powf(0.25);
    (q / 2.0.sqrt(), 1.0 / (q * 2.0.sqrt()))
}

/// `(1/pi) B(lambda)^{-1} P.v. int_Sigma (lambda - mu)^{-1} B(mu) F(mu) dmu`
/// on the gapped set `Sigma`. Each component decouples; within a branch
/// the integral is a principal value, across the gap it is regular.
pub fn dirac_kernel(mass: f64, f: &PairFunction) -> Result<PairFunction> {
    let g = match f.grid() {
        Grid::Split(g) if g.mass == mass => g,
        _ => return Err(Error::GridMismatch),
    };
    let nb = g.per_branch;
    let band = band_nodes(nb);
    for comp in [&f.first, &f.second] {
        check_edges(&comp.values()[..nb], band, "edge of the negative branch")?;
        check_edges(&comp.values()[nb..], band, "edge of the positive branch")?;
    }
    let weights: Vec<(f64, f64)> = (0..2 * nb).map(|j| dirac_weights(mass, g.point(j))).collect();
    let first = dirac_component(&g, &weights, f.first.values(), |w| w.0)?;
    let second = dirac_component(&g, &weights, f.second.values(), |w| w.1)?;
    PairFunction::new(f.first.with_values(first)?, f.second.with_values(second)?)
}

fn dirac_component(g: &SplitGrid, weights: &[(f64, f64)], values: &[C64], pick: impl Fn(&(f64, f64)) -> f64) -> Result<Vec<C64>> {
    let nb = g.per_branch;
    let h = g.spacing();
    let weighted: Vec<C64> = values.iter().zip(weights).map(|(v, w)| v * pick(w)).collect();
    let (neg, pos) = weighted.split_at(nb);
    let mut out = cauchy_pv(neg)?;
    out.extend(cauchy_pv(pos)?);
    // lambda_i - mu_j = +-(m + R) + (i - j) h across the gap
    let gap = g.mass + g.reach;
    let cross = |offset: f64| -> Vec<C64> {
        (0..2 * nb - 1)
            .map(|p| {
                let k = p as f64 - (nb - 1) as f64;
                C64::new(h / (PI * (offset + k * h)), 0.0)
            })
            .collect()
    };
    let onto_pos = toeplitz_apply(&cross(gap), neg);
    let onto_neg = toeplitz_apply(&cross(-gap), pos);
    for i in 0..nb {
        out[i] += onto_neg[i];
        out[nb + i] += onto_pos[i];
    }
    Ok(out.iter().zip(weights).map(|(v, w)| v / pick(w)).collect())
}

/// Which branch of `Sigma` a point lies on, if any.
pub fn sigma_branch(mass: f64, lambda: f64) -> Option<Branch> {
    if lambda > mass {
        Some(Branch::Positive)
    } else if lambda < -mass {
        Some(Branch::Negative)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::{IntervalGrid, UniformGrid};
    use proptest::prelude::*;

    fn bump(c: f64, w: f64) -> impl Fn(f64) -> C64 {
        move |x| {
            let u = (x - c) / w;
            if u.abs() < 1.0 {
                C64::new((-1.0 / (1.0 - u * u)).exp(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        }
    }

    fn interval(a: f64, b: f64, n: usize, f: impl Fn(f64) -> C64) -> GridFunction {
        GridFunction::sample(Grid::Interval(IntervalGrid::new(a, b, n).unwrap()), f).unwrap()
    }

    #[test]
    fn fast_matches_direct() {
        let f: Vec<C64> = (0..200).map(|j| C64::new((j as f64 * 0.1).sin(), (j as f64 * 0.03).cos())).collect();
        let a = cauchy_pv(&f).unwrap();
        let b = cauchy_pv_direct(&f).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_gives_log() {
        let (a, b) = (0.0, 1.0);
        let f = interval(a, b, 1 << 10, |_| C64::new(1.0, 0.0));
        let out = finite_hilbert(&f).unwrap();
        for (j, v) in out.values().iter().enumerate() {
            let l = f.grid().point(j);
            let want = ((l - a) / (b - l)).ln() / PI;
            assert!((v.re - want).abs() < 1e-12 && v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn quadratic_is_exact() {
        // P.v. int_a^b mu^2/(l - mu) dmu = l^2 ln((l-a)/(b-l)) - l (b - a) - (b^2 - a^2)/2
        let (a, b) = (-3.0, 7.0);
        let f = interval(a, b, 256, |x| C64::new(x * x, 0.0));
        let out = finite_hilbert(&f).unwrap();
        for (j, v) in out.values().iter().enumerate() {
            let l = f.grid().point(j);
            let want = (l * l * ((l - a) / (b - l)).ln() - l * (b - a) - 0.5 * (b * b - a * a)) / PI;
            assert!((v.re - want).abs() < 1e-10, "{j}");
        }
    }

    #[test]
    fn nonlocal_and_positive() {
        let f = interval(0.0, 1.0, 1 << 10, bump(0.25, 0.2));
        let out = finite_hilbert(&f).unwrap();
        for (j, v) in out.values().iter().enumerate() {
            if f.grid().point(j) > 0.5 {
                assert!(v.re > 0.0);
            }
        }
    }

    #[test]
    fn semicircle_oracle() {
        // (1/pi) P.v. int sqrt(1 - mu^2)/(l - mu) dmu = l; square-root ends
        // limit the accuracy away from the endpoints to about h
        let f = interval(-1.0, 1.0, 1 << 14, |x| C64::new((1.0 - x * x).max(0.0).sqrt(), 0.0));
        let out = finite_hilbert(&f).unwrap();
        for (j, v) in out.values().iter().enumerate() {
            let l = f.grid().point(j);
            if l.abs() < 0.5 {
                assert!((v.re - l).abs() < 1e-3, "{l} {}", v.re);
            }
        }
    }

    #[test]
    fn hilbert_of_even_is_odd() {
        let g = UniformGrid::centered(16.0, 1 << 12).unwrap();
        let f = GridFunction::sample(Grid::Line(g), |x| C64::new((-x * x).exp(), 0.0)).unwrap();
        let h = hilbert_pv(&f).unwrap();
        let n = g.n;
        for j in 0..n {
            assert!((h.values()[j] + h.values()[n - 1 - j]).norm() < 1e-10);
        }
    }

    #[test]
    fn weighted_rejects_edges_and_is_complex() {
        let g = Grid::Interval(IntervalGrid::new(-2.0, 2.0, 1 << 10).unwrap());
        let touching = GridFunction::sample(g, |_| C64::new(1.0, 0.0)).unwrap();
        assert!(weighted_finite_hilbert(&touching).is_err());
        let f = GridFunction::sample(g, bump(0.3, 1.0)).unwrap();
        let out = weighted_finite_hilbert(&f).unwrap();
        assert!(out.values().iter().any(|v| v.im.abs() > 1e-3));
        let wrong = interval(0.0, 1.0, 64, bump(0.5, 0.2));
        assert_eq!(weighted_finite_hilbert(&wrong).unwrap_err(), Error::GridMismatch);
    }

    #[test]
    fn dirac_matches_direct_sum_and_decouples() {
        let sg = SplitGrid::new(1.0, 10.0, 128).unwrap();
        let grid = Grid::Split(sg);
        let rule = |x: f64| (bump(3.0, 1.4)(x) + bump(-3.0, 1.4)(x) * 0.5, bump(-2.5, 1.0)(x));
        let f = PairFunction::sample(grid, rule).unwrap();
        let out = dirac_kernel(1.0, &f).unwrap();
        // the cross-branch sum matches a direct double loop
        let h = sg.spacing();
        let nb = sg.per_branch;
        for i in [5usize, 60, 130, 200] {
            let l = sg.point(i);
            let (b1, _) = dirac_weights(1.0, l);
            let own: Vec<C64> = if i < nb { f.first.values()[..nb].to_vec() } else { f.first.values()[nb..].to_vec() };
            let w: Vec<C64> = own
                .iter()
                .enumerate()
                .map(|(j, v)| v * dirac_weights(1.0, sg.point(if i < nb { j } else { nb + j })).0)
                .collect();
            let pv = cauchy_pv_direct(&w).unwrap()[i % nb];
            let other = if i < nb { nb..2 * nb } else { 0..nb };
            let cross: C64 = other
                .map(|j| f.first.values()[j] * dirac_weights(1.0, sg.point(j)).0 * h / (PI * (l - sg.point(j))))
                .sum();
            assert!(((pv + cross) / b1 - out.first.values()[i]).norm() < 1e-12);
        }
        let zeroed = PairFunction::new(f.first.clone(), f.second.scale(C64::new(0.0, 0.0))).unwrap();
        let z = dirac_kernel(1.0, &zeroed).unwrap();
        assert_eq!(z.first.values(), out.first.values());
        assert!(z.second.norm() == 0.0);
    }

    #[test]
    fn dirac_rejects_data_at_the_gap() {
        let grid = Grid::Split(SplitGrid::new(1.0, 10.0, 128).unwrap());
        let f = PairFunction::sample(grid, |x| (C64::new(1.0 / x, 0.0), C64::new(0.0, 0.0))).unwrap();
        assert!(dirac_kernel(1.0, &f).is_err());
        assert_eq!(sigma_branch(1.0, 0.5), None);
        assert_eq!(sigma_branch(1.0, -1.5), Some(Branch::Negative));
    }

    proptest! {
        #[test]
        fn linear(c1 in -1.0f64..1.0, c2 in -1.0f64..1.0, s in 0.2f64..0.8) {
            let f = interval(0.0, 1.0, 512, bump(s, 0.15));
            let g = interval(0.0, 1.0, 512, |x| C64::new(x.sin(), x * x));
            let alpha = C64::new(c1, c2);
            let lhs = finite_hilbert(&f.scale(alpha).axpy(C64::new(1.0, 0.0), &g).unwrap()).unwrap();
            let rhs = finite_hilbert(&f).unwrap().scale(alpha).axpy(C64::new(1.0, 0.0), &finite_hilbert(&g).unwrap()).unwrap();
            prop_assert!(lhs.distance(&rhs).unwrap() < 1e-12 * (1.0 + rhs.norm()));
        }
    }
}
