//! Singular integral operators on the line, the half-line and gapped sets,
//! realized twice: by direct kernel quadrature and as smooth spectral
//! multipliers of the dilation generator `A` (Mellin side) or of the
//! momentum `D = -i d/dx` (Fourier side).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, parallel
//! corpus evaluation and the command-line front end live in the `specres`
//! crate.
//!
//! ```
//! # use specres_core::grids::{Grid, GridFunction, UniformGrid};
//! # use specres_core::diagonal::{FourierEngine, Symbol};
//! # use specres_core::C64;
//!
//! let grid = UniformGrid::centered(16.0, 1 << 12).unwrap();
//! let f = GridFunction::sample(Grid::Line(grid), |x| C64::new(1.0 / (1.0 + x * x), 0.0)).unwrap();
//! let engine = FourierEngine::new(grid, 2).unwrap();
//! let h = engine.apply(&Symbol::hilbert(), &f).unwrap();
//! assert!(h.values()[0].re.abs() < 0.1);
//! ```
#![no_std]
#![cfg_attr(test, allow(unused_imports))]

extern crate alloc;

pub mod corpus;
pub mod diagonal;
mod error;
pub mod fft;
pub mod grids;
pub mod interp;
pub mod kernels;
pub mod quad;
pub mod resolutions;
pub mod specfun;

pub use error::{Error, Result};

/// Complex double, the scalar type of every grid function.
pub type C64 = num_complex::Complex<f64>;

pub(crate) const PI: f64 = core::f64::consts::PI;
