//! In-place radix-2 FFT with precomputed twiddles, and the linear
//! convolution/correlation helpers the quadrature kernels are built on.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by std methods when a dependency links std
use num_traits::Float;

use crate::{Error, Result, C64, PI};

/// A transform plan for one power-of-two length.
#[derive(Debug, Clone)]
pub struct Fft {
    n: usize,
    twiddles: Vec<C64>,
    bitrev: Vec<u32>,
}

impl Fft {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo { n });
        }
        let bits = n.trailing_zeros();
        let twiddles = (0..n / 2)
            .map(|k| {
                let (s, c) = (-2.0 * PI * k as f64 / n as f64).sin_cos();
                C64::new(c, s)
            })
            .collect();
        let bitrev = (0..n as u32).map(|j| j.reverse_bits() >> (32 - bits)).collect();
        Ok(Fft { n, twiddles, bitrev })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `X_k = sum_j x_j exp(-2 pi i j k / n)`.
    pub fn forward(&self, data: &mut [C64]) {
        self.run(data, false);
    }

    /// Unnormalized inverse: `forward` followed by `inverse` multiplies by `n`.
    pub fn inverse(&self, data: &mut [C64]) {
        self.run(data, true);
    }

    fn run(&self, data: &mut [C64], inverse: bool) {
        assert_eq!(data.len(), self.n, "buffer length must match the plan");
        for (j, &r) in self.bitrev.iter().enumerate() {
            let r = r as usize;
            if j < r {
                data.swap(j, r);
            }
        }
        let mut half = 1;
        while half < self.n {
            let stride = self.n / (2 * half);
            for block in data.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for k in 0..half {
                    let mut w = self.twiddles[k * stride];
                    if inverse {
                        w = w.conj();
                    }
                    let t = hi[k] * w;
                    hi[k] = lo[k] - t;
                    lo[k] += t;
                }
            }
            half *= 2;
        }
    }
}

/// `out[i] = sum_j kernel[i - j + (n - 1)] * x[j]` for `i, j < n`, where
/// `kernel` has length `2n - 1` and is indexed by the offset `i - j`.
/// Evaluated with one FFT of length `>= 3n` rounded up to a power of two.
pub fn toeplitz_apply(kernel: &[C64], x: &[C64]) -> Vec<C64> {
    let n = x.len();
    assert_eq!(kernel.len(), 2 * n - 1);
    let size = (3 * n).next_power_of_two();
    let plan = Fft::new(size).expect("power of two");
    let mut a = vec![C64::new(0.0, 0.0); size];
    a[..kernel.len()].copy_from_slice(kernel);
    let mut b = vec![C64::new(0.0, 0.0); size];
    b[..n].copy_from_slice(x);
    plan.forward(&mut a);
    plan.forward(&mut b);
    for (p, q) in a.iter_mut().zip(&b) {
        *p *= q;
    }
    plan.inverse(&mut a);
    let scale = 1.0 / size as f64;
    a[n - 1..2 * n - 1].iter().map(|v| v * scale).collect()
}

/// `out[i] = sum_q omega[i + q] * x[q]` for `i, q < n`, with `omega` of
/// length `2n - 1` (a Hankel-structured matrix).
pub fn hankel_apply(omega: &[C64], x: &[C64]) -> Vec<C64> {
    let n = x.len();
    assert_eq!(omega.len(), 2 * n - 1);
    let reversed: Vec<C64> = x.iter().rev().copied().collect();
    // sum_q omega[i + q] x[q] = sum_j omega[i - j + n - 1] x[n - 1 - j]
    toeplitz_apply(omega, &reversed)
}
