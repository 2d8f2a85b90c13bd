use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use super::{sample_symbol, MatrixSymbol, Symbol};
use crate::error::invalid;
use crate::fft::Fft;
use crate::grids::{Grid, GridFunction, Measure, PairFunction, UniformGrid};
use crate::{Error, Result, C64, PI};

/// Fourier transform bound to a uniform grid, zero-padded by `padding`.
///
/// Padding pushes the periodic images of a multiplier's kernel out of the
/// window: with padding `p` the first image sits `p` window widths away.
#[derive(Debug, Clone)]
pub struct FourierEngine {
    grid: UniformGrid,
    padding: usize,
    fft: Fft,
}

impl FourierEngine {
    pub fn new(grid: UniformGrid, padding: usize) -> Result<Self> {
        if padding == 0 || !padding.is_power_of_two() {
            return Err(invalid("padding", "must be a power of two"));
        }
        if !grid.n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { n: grid.n });
        }
        let fft = Fft::new(grid.n * padding)?;
        Ok(FourierEngine { grid, padding, fft })
    }

    pub fn grid(&self) -> UniformGrid {
        self.grid
    }

    pub fn padding(&self) -> usize {
        self.padding
    }

    fn size(&self) -> usize {
        self.fft.len()
    }

    fn dk(&self) -> f64 {
        2.0 * PI / (self.size() as f64 * self.grid.dx)
    }

    /// Dual grid `k_q = (q - N/2) dk`, `N` the padded length.
    pub fn dual_grid(&self) -> UniformGrid {
        let n = self.size();
        UniformGrid { x0: -(n as f64 / 2.0) * self.dk(), dx: self.dk(), n }
    }

    /// Frequency of FFT bin `j` (natural order); the Nyquist bin is negative.
    fn frequency(&self, j: usize) -> f64 {
        let n = self.size();
        let q = if j < n / 2 { j as f64 } else { j as f64 - n as f64 };
        q * self.dk()
    }

    /// Symbol on the FFT bins. At the Nyquist bin, where `+-pi/dx` alias, the
    /// two one-sided values are averaged so that parity is preserved.
    pub fn sampled_symbol(&self, sym: &Symbol) -> Result<Vec<C64>> {
        let n = self.size();
        let mut values = sample_symbol(sym, (0..n).map(|j| self.frequency(j)))?;
        let nyq = PI / self.grid.dx;
        values[n / 2] = (sym.eval(nyq) + sym.eval(-nyq)) * 0.5;
        if !(values[n / 2].re.is_finite() && values[n / 2].im.is_finite()) {
            return Err(Error::NonFinite { what: "symbol value", index: n / 2 });
        }
        Ok(values)
    }

    fn check(&self, f: &GridFunction) -> Result<()> {
        match f.grid() {
            Grid::Line(g) if g == self.grid => Ok(()),
            _ => Err(Error::GridMismatch),
        }
    }

    fn padded(&self, values: &[C64]) -> Vec<C64> {
        let mut buf = vec![C64::new(0.0, 0.0); self.size()];
        buf[..values.len()].copy_from_slice(values);
        buf
    }

    /// `F^{-1}[m(k) F f]` on raw samples; `m` in FFT bin order.
    pub(crate) fn multiply_values(&self, m: &[C64], values: &[C64]) -> Vec<C64> {
        let mut buf = self.padded(values);
        self.fft.forward(&mut buf);
        for (b, s) in buf.iter_mut().zip(m) {
            *b *= s;
        }
        self.fft.inverse(&mut buf);
        let scale = 1.0 / self.size() as f64;
        buf.truncate(values.len());
        buf.iter().map(|v| v * scale).collect()
    }

    /// `[F f](k_q) = (2 pi)^{-1/2} sum_j f_j e^{-i k_q x_j} dx` on the dual
    /// grid; an isometry onto `L^2(dk)`.
    pub fn fourier(&self, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        let n = self.size();
        let mut buf = self.padded(f.values());
        // bin q of the DFT of (-1)^j f_j holds frequency k_q
        for (j, v) in buf.iter_mut().enumerate() {
            if j % 2 == 1 {
                *v = -*v;
            }
        }
        self.fft.forward(&mut buf);
        let dual = self.dual_grid();
        let norm = self.grid.dx / (2.0 * PI).sqrt();
        let shifted: Vec<C64> = (0..n)
            .map(|q| {
                let k = dual.point(q);
                buf[q] * C64::from_polar(norm, -k * self.grid.x0)
            })
            .collect();
        GridFunction::from_values(Grid::Line(dual), Measure::Lebesgue, shifted)
    }

    /// Inverse of [`FourierEngine::fourier`], restricted to the original window.
    pub fn inverse_fourier(&self, spectrum: &GridFunction) -> Result<GridFunction> {
        let dual = self.dual_grid();
        if spectrum.grid() != Grid::Line(dual) {
            return Err(Error::GridMismatch);
        }
        let n = self.size();
        let mut buf = vec![C64::new(0.0, 0.0); n];
        for (q, v) in spectrum.values().iter().enumerate() {
            let k = dual.point(q);
            buf[q] = v * C64::from_polar(1.0, k * self.grid.x0);
        }
        self.fft.inverse(&mut buf);
        let norm = self.dk() / (2.0 * PI).sqrt();
        let values = buf[..self.grid.n]
            .iter()
            .enumerate()
            .map(|(j, v)| if j % 2 == 1 { -v * norm } else { v * norm })
            .collect();
        GridFunction::from_values(Grid::Line(self.grid), Measure::Lebesgue, values)
    }

    /// `sym(D) f = F^{-1}[sym(k) F f]`.
    pub fn apply(&self, sym: &Symbol, f: &GridFunction) -> Result<GridFunction> {
        self.check(f)?;
        let m = self.sampled_symbol(sym)?;
        f.with_values(self.multiply_values(&m, f.values()))
    }

    /// Matrix multiplier on a pair-valued function.
    pub fn apply_matrix(&self, sym: &MatrixSymbol, f: &PairFunction) -> Result<PairFunction> {
        self.check(&f.first)?;
        let m = [
            [self.sampled_symbol(&sym.entries[0][0])?, self.sampled_symbol(&sym.entries[0][1])?],
            [self.sampled_symbol(&sym.entries[1][0])?, self.sampled_symbol(&sym.entries[1][1])?],
        ];
        let (a, b) = matrix_multiply(&self.fft, &m, f.first.values(), f.second.values());
        PairFunction::new(f.first.with_values(a)?, f.second.with_values(b)?)
    }
}

/// `(a, b) -> F^{-1} M F (a, b)` with zero padding to the plan length.
pub(crate) fn matrix_multiply(fft: &Fft, m: &[[Vec<C64>; 2]; 2], a: &[C64], b: &[C64]) -> (Vec<C64>, Vec<C64>) {
    let n = fft.len();
    let mut fa = vec![C64::new(0.0, 0.0); n];
    let mut fb = vec![C64::new(0.0, 0.0); n];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    fft.forward(&mut fa);
    fft.forward(&mut fb);
    let mut ga = vec![C64::new(0.0, 0.0); n];
    let mut gb = vec![C64::new(0.0, 0.0); n];
    for j in 0..n {
        ga[j] = m[0][0][j] * fa[j] + m[0][1][j] * fb[j];
        gb[j] = m[1][0][j] * fa[j] + m[1][1][j] * fb[j];
    }
    fft.inverse(&mut ga);
    fft.inverse(&mut gb);
    let scale = 1.0 / n as f64;
    (
        ga[..a.len()].iter().map(|v| v * scale).collect(),
        gb[..b.len()].iter().map(|v| v * scale).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line(l: f64, n: usize) -> UniformGrid {
        UniformGrid::centered(l, n).unwrap()
    }

    fn sample(g: UniformGrid, f: impl Fn(f64) -> C64) -> GridFunction {
        GridFunction::sample(Grid::Line(g), f).unwrap()
    }

    #[test]
    fn gaussian_is_fixed() {
        let g = line(16.0, 1 << 14);
        for padding in [1, 2] {
            let e = FourierEngine::new(g, padding).unwrap();
            let f = sample(g, |x| C64::new((-0.5 * x * x).exp(), 0.0));
            let hat = e.fourier(&f).unwrap();
            let want = GridFunction::sample(hat.grid(), |k| C64::new((-0.5 * k * k).exp(), 0.0)).unwrap();
            assert!(hat.distance(&want).unwrap() / want.norm() < 1e-10);
        }
    }

    #[test]
    fn shift_becomes_modulation() {
        let g = line(16.0, 1 << 12);
        let e = FourierEngine::new(g, 1).unwrap();
        let f = e.fourier(&sample(g, |x| C64::new((-0.5 * x * x).exp(), 0.0))).unwrap();
        let fs = e.fourier(&sample(g, |x| C64::new((-0.5 * (x - 1.0) * (x - 1.0)).exp(), 0.0))).unwrap();
        let modulated = f.multiply(|k| C64::from_polar(1.0, -k)).unwrap();
        assert!(fs.distance(&modulated).unwrap() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(FourierEngine::new(line(4.0, 64), 3).is_err());
        let e = FourierEngine::new(line(4.0, 64), 2).unwrap();
        let other = sample(line(5.0, 64), |_| C64::new(1.0, 0.0));
        assert_eq!(e.fourier(&other).unwrap_err(), Error::GridMismatch);
        let bad = Symbol::new("nan", |_| C64::new(f64::NAN, 0.0));
        let f = sample(line(4.0, 64), |_| C64::new(1.0, 0.0));
        assert!(matches!(e.apply(&bad, &f), Err(Error::NonFinite { .. })));
    }

    #[test]
    fn hilbert_pair_by_multiplier() {
        // H[1/(1+x^2)] = x/(1+x^2); the slow decay needs a wide window, so
        // the comparison is restricted to |x| < 20 and is only O(1/L).
        let g = line(2048.0, 1 << 17);
        let e = FourierEngine::new(g, 2).unwrap();
        let f = sample(g, |x| C64::new(1.0 / (1.0 + x * x), 0.0));
        let h = e.apply(&Symbol::hilbert(), &f).unwrap();
        for (j, x) in g.points().enumerate() {
            if x.abs() < 20.0 {
                assert!((h.values()[j] - C64::new(x / (1.0 + x * x), 0.0)).norm() < 1e-3, "x = {x}");
            }
        }
    }

    #[test]
    fn identity_symbol() {
        let g = line(8.0, 512);
        let e = FourierEngine::new(g, 2).unwrap();
        let f = sample(g, |x| C64::new((-x * x).exp(), x * (-x * x).exp()));
        let out = e.apply(&Symbol::one(), &f).unwrap();
        assert!(out.distance(&f).unwrap() < 1e-10 * f.norm());
        let back = e.inverse_fourier(&e.fourier(&f).unwrap()).unwrap();
        assert!(back.distance(&f).unwrap() < 1e-12 * f.norm());
    }

    proptest! {
        #[test]
        fn parseval_and_contraction(c1 in -1.0f64..1.0, c2 in -1.0f64..1.0, w in 0.5f64..3.0, s in -2.0f64..2.0) {
            let g = line(16.0, 1 << 11);
            let e = FourierEngine::new(g, 2).unwrap();
            let f = sample(g, |x| C64::new(c1 * (-w * (x - s) * (x - s)).exp(), c2 * (x * w).sin() * (-0.5 * x * x).exp()));
            let hat = e.fourier(&f).unwrap();
            prop_assert!((hat.norm() - f.norm()).abs() <= 1e-10 * f.norm().max(1e-300));
            let t = e.apply(&Symbol::tanh_pi_half(), &f).unwrap();
            prop_assert!(t.norm() <= f.norm() * (1.0 + 1e-12));
        }
    }
}
