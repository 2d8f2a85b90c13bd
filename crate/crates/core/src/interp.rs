//! Four-point Lagrange interpolation on uniformly spaced samples.

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::C64;

/// Cubic interpolation of samples `values[j]` taken at `x0 + j dx`.
///
/// Samples outside `0..values.len()` count as zero, so the interpolant
/// fades to zero within two spacings of either end.
pub fn cubic_uniform(values: &[C64], x0: f64, dx: f64, x: f64) -> C64 {
    let s = (x - x0) / dx;
    let n = values.len() as f64;
    if !s.is_finite() || s <= -2.0 || s >= n + 1.0 {
        return C64::new(0.0, 0.0);
    }
    let j = s.floor();
    let p = s - j;
    let w = [
        -p * (p - 1.0) * (p - 2.0) / 6.0,
        (p + 1.0) * (p - 1.0) * (p - 2.0) / 2.0,
        -(p + 1.0) * p * (p - 2.0) / 2.0,
        (p + 1.0) * p * (p - 1.0) / 6.0,
    ];
    let base = j as i64 - 1;
    let mut acc = C64::new(0.0, 0.0);
    for (k, wk) in w.iter().enumerate() {
        let idx = base + k as i64;
        if idx >= 0 && (idx as usize) < values.len() {
            acc += values[idx as usize] * *wk;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn reproduces_cubics_and_nodes() {
        let x0 = -1.0;
        let dx = 0.1;
        let f = |x: f64| 2.0 - x + 0.5 * x * x - 0.25 * x * x * x;
        let values: Vec<C64> = (0..40).map(|j| C64::new(f(x0 + j as f64 * dx), 0.0)).collect();
        for k in 0..300 {
            let x = -0.85 + k as f64 * 0.01;
            if x > x0 + 38.0 * dx {
                break;
            }
            assert!((cubic_uniform(&values, x0, dx, x).re - f(x)).abs() < 1e-12);
        }
        assert_eq!(cubic_uniform(&values, x0, dx, x0 + 7.0 * dx), values[7]);
        assert_eq!(cubic_uniform(&values, x0, dx, -5.0), C64::new(0.0, 0.0));
    }

    #[test]
    fn fourth_order_convergence() {
        let err = |dx: f64| {
            let values: Vec<C64> = (0..(4.0 / dx) as usize).map(|j| C64::new((j as f64 * dx).sin(), 0.0)).collect();
            (0..97).map(|k| {
                let x = 1.0 + k as f64 * 0.0173;
                (cubic_uniform(&values, 0.0, dx, x).re - x.sin()).abs()
            })
            .fold(0.0, f64::max)
        };
        let ratio = err(0.02) / err(0.01);
        assert!(ratio > 12.0, "ratio {ratio}");
    }
}
