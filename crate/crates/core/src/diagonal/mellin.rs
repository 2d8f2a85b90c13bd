use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use super::fourier::{matrix_multiply, FourierEngine};
use super::{MatrixSymbol, Symbol};
use crate::fft::Fft;
use crate::grids::{Grid, GridFunction, LogGrid, Measure, PairFunction};
use crate::{Error, Result, C64};

/// Sign relating the Mellin spectral variable `t` to the Fourier variable
/// `k` of the log coordinate: `t = MELLIN_ORIENTATION * k`.
///
/// Fixed by calibration against the `J H_m` kernel, whose symbol computed as
/// `int K(1, y) y^{-1/2 + it} dy` must equal `Xi_m(t)` (and not `Xi_m(-t)`);
/// see the `orientation_calibration` test in this module.
pub const MELLIN_ORIENTATION: f64 = 1.0;

/// Mellin transform bound to a log grid: `(W f)(u) = e^{alpha u} f(e^u)`
/// followed by the Fourier transform in `u`, with `alpha = 1/2` for `dx`
/// and `3/2` for `r^2 dr`. The dilation generator `A` becomes
/// multiplication by `t`.
#[derive(Debug, Clone)]
pub struct MellinEngine {
    grid: LogGrid,
    measure: Measure,
    inner: FourierEngine,
    fft: Fft,
}

impl MellinEngine {
    pub fn new(grid: LogGrid, measure: Measure, padding: usize) -> Result<Self> {
        let inner = FourierEngine::new(grid.u, padding)?;
        let fft = Fft::new(grid.len() * padding)?;
        Ok(MellinEngine { grid, measure, inner, fft })
    }

    pub fn grid(&self) -> LogGrid {
        self.grid
    }

    pub fn measure(&self) -> Measure {
        self.measure
    }

    /// Weight exponent of the unitary `W`.
    pub fn alpha(&self) -> f64 {
        match self.measure {
            Measure::Lebesgue => 0.5,
            Measure::RadialSquared => 1.5,
        }
    }

    fn check(&self, f: &GridFunction) -> Result<()> {
        if f.grid() != Grid::Log(self.grid) || f.measure() != self.measure {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    fn to_line(&self, values: &[C64]) -> Vec<C64> {
        let a = self.alpha();
        values.iter().enumerate().map(|(j, v)| v * (a * self.grid.u.point(j)).exp()).collect()
    }

    fn from_line(&self, values: &[C64]) -> Vec<C64> {
        let a = self.alpha();
        values.iter().enumerate().map(|(j, v)| v * (-a * self.grid.u.point(j)).exp()).collect()
    }

    fn oriented(&self, sym: &Symbol) -> Symbol {
        if MELLIN_ORIENTATION > 0.0 {
            sym.clone()
        } else {
            sym.reflected()
        }
    }

    /// The transform on the spectral grid in `t`.
    pub fn mellin(&self, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        let w = GridFunction::from_values(Grid::Line(self.grid.u), Measure::Lebesgue, self.to_line(f.values()))?;
        let hat = self.inner.fourier(&w)?;
        if MELLIN_ORIENTATION > 0.0 {
            return Ok(hat);
        }
        let mut values = hat.into_values();
        values.reverse();
        GridFunction::from_values(Grid::Line(self.inner.dual_grid()), Measure::Lebesgue, values)
    }

    pub fn inverse_mellin(&self, spectrum: &GridFunction) -> Result<GridFunction> {
        let spectrum = if MELLIN_ORIENTATION > 0.0 {
            spectrum.clone()
        } else {
            let mut values = spectrum.values().to_vec();
            values.reverse();
            spectrum.with_values(values)?
        };
        let w = self.inner.inverse_fourier(&spectrum)?;
        GridFunction::from_values(Grid::Log(self.grid), self.measure, self.from_line(w.values()))
    }

    /// `sym(A) f`.
    pub fn apply(&self, sym: &Symbol, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        let m = self.inner.sampled_symbol(&self.oriented(sym))?;
        let out = self.inner.multiply_values(&m, &self.to_line(f.values()));
        f.with_values(self.from_line(&out))
    }

    /// Matrix multiplier of `A` on a pair-valued function.
    pub fn apply_matrix(&self, sym: &MatrixSymbol, f: &PairFunction) -> Result<PairFunction> {
        self.check(&f.first)?;
        let e = &sym.entries;
        let s = |x: &Symbol| self.inner.sampled_symbol(&self.oriented(x));
        let m = [[s(&e[0][0])?, s(&e[0][1])?], [s(&e[1][0])?, s(&e[1][1])?]];
        let (a, b) = matrix_multiply(&self.fft, &m, &self.to_line(f.first.values()), &self.to_line(f.second.values()));
        PairFunction::new(f.first.with_values(self.from_line(&a))?, f.second.with_values(self.from_line(&b))?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::{symbol_from_homogeneous_kernel, KernelSlice};
    use crate::specfun::xi_symbol;
    use proptest::prelude::*;

    fn engine(n: usize) -> MellinEngine {
        wide_engine(16.0, n)
    }

    fn wide_engine(big_u: f64, n: usize) -> MellinEngine {
        MellinEngine::new(LogGrid::symmetric(big_u, n).unwrap(), Measure::Lebesgue, 2).unwrap()
    }

    fn log_gauss(e: &MellinEngine, c: f64, s: f64, w: f64) -> GridFunction {
        GridFunction::sample(Grid::Log(e.grid()), |x| {
            let u = x.ln();
            C64::from_polar(x.powf(-0.5) * (-(u - c) * (u - c) / (2.0 * s * s)).exp(), w * u)
        })
        .unwrap()
    }

    #[test]
    fn orientation_calibration() {
        // the J H_m kernel's symbol matches Xi_m(t), and is far from Xi_m(-t)
        let sym = symbol_from_homogeneous_kernel(&KernelSlice::j_hankel(1.0), (-3.0, 3.0), 0.01).unwrap();
        let (mut plus, mut minus) = (0.0f64, 0.0f64);
        for k in -30..=30 {
            let t = k as f64 * 0.1;
            plus = plus.max((sym.eval(t) - xi_symbol(1.0, t)).norm());
            minus = minus.max((sym.eval(t) - xi_symbol(1.0, -t)).norm());
        }
        assert!(plus < 1e-6 && minus > 0.5, "{plus} {minus}");
        assert_eq!(MELLIN_ORIENTATION, 1.0);
    }

    #[test]
    fn log_gaussian_goes_to_gaussian() {
        let e = engine(1 << 12);
        let f = log_gauss(&e, 0.0, 1.0, 0.0);
        let m = e.mellin(&f).unwrap();
        let want = GridFunction::sample(m.grid(), |t| C64::new((-0.5 * t * t).exp(), 0.0)).unwrap();
        assert!(m.distance(&want).unwrap() < 1e-10);
        assert!((m.norm() - f.norm()).abs() < 1e-10 * f.norm());
        let back = e.inverse_mellin(&m).unwrap();
        assert!(back.distance(&f).unwrap() < 1e-10 * f.norm());
    }

    #[test]
    fn dilation_becomes_modulation() {
        let e = engine(1 << 12);
        let s = 0.7;
        let f = log_gauss(&e, 0.3, 0.8, 1.0);
        let dilated = GridFunction::sample(Grid::Log(e.grid()), |x| {
            let y = (s as f64).exp() * x;
            let u = y.ln();
            (0.5 * s).exp() * C64::from_polar(y.powf(-0.5) * (-(u - 0.3) * (u - 0.3) / (2.0 * 0.64)).exp(), u)
        })
        .unwrap();
        let lhs = e.mellin(&dilated).unwrap();
        let rhs = e.mellin(&f).unwrap().multiply(|t| C64::from_polar(1.0, s * t)).unwrap();
        assert!(lhs.distance(&rhs).unwrap() < 1e-10 * f.norm());
    }

    #[test]
    fn stieltjes_operator_is_sech() {
        // (1/pi) int f(y)/(x+y) dy by direct midpoint quadrature in u
        let e = engine(1 << 11);
        let f = log_gauss(&e, 0.5, 0.7, 2.0);
        let g = e.grid();
        let du = g.u.dx;
        let direct: Vec<C64> = (0..g.len())
            .map(|i| {
                let x = g.point(i);
                (0..g.len()).map(|j| f.values()[j] * g.point(j) * du / (x + g.point(j))).sum::<C64>()
                    / crate::PI
            })
            .collect();
        let direct = f.with_values(direct).unwrap();
        let spectral = e.apply(&Symbol::sech_pi(1.0), &f).unwrap();
        assert!(direct.distance(&spectral).unwrap() < 1e-5 * f.norm());
    }

    #[test]
    fn identity_and_radial_measure() {
        let e = engine(1 << 10);
        let f = log_gauss(&e, 0.0, 1.0, 0.5);
        assert!(e.apply(&Symbol::one(), &f).unwrap().distance(&f).unwrap() < 1e-12);
        let g = LogGrid::symmetric(16.0, 1 << 10).unwrap();
        let radial = MellinEngine::new(g, Measure::RadialSquared, 2).unwrap();
        assert_eq!(radial.alpha(), 1.5);
        let h = GridFunction::sample_in(Grid::Log(g), Measure::RadialSquared, |r| C64::new((-r * r).exp(), 0.0)).unwrap();
        assert!((radial.mellin(&h).unwrap().norm() - h.norm()).abs() < 1e-10 * h.norm());
        assert_eq!(radial.apply(&Symbol::one(), &f), Err(Error::GridMismatch));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn roundtrip_and_composition(m in 0.0f64..3.0, c in -2.0f64..2.0, w in -3.0f64..3.0) {
            // outputs of Xi_m(A) decay like e^{-(m+1)|u|}; the window must hold them
            let e = wide_engine(32.0, 1 << 13);
            let f = log_gauss(&e, c, 0.8, w);
            let xi = Symbol::xi(m);
            let there = e.apply(&xi, &f).unwrap();
            let back = e.apply(&xi.reciprocal(), &there).unwrap();
            prop_assert!(back.distance(&f).unwrap() < 1e-8 * f.norm());
            let s2 = Symbol::xi(0.5).reflected();
            let both = e.apply(&xi.product(&s2), &f).unwrap();
            let seq = e.apply(&xi, &e.apply(&s2, &f).unwrap()).unwrap();
            prop_assert!(both.distance(&seq).unwrap() < 1e-8 * f.norm());
        }
    }
}
