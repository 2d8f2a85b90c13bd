//! Direct kernel-side realizations of the singular operators and of the
//! unitary changes of representation.

mod hankel;
mod maps;
mod pv;

pub use hankel::{fourier_sph, hankel, inversion_j, t3d_kernel, HankelOperator, SphericalFourier, T3dOperator, TAIL_TOLERANCE};
pub use maps::{even_odd_adjoint, even_odd_split, rescale_interval, rescale_pm2, rescale_sigma, IntervalMap};
pub use pv::{
    beta, cauchy_pv, cauchy_pv_direct, dirac_kernel, dirac_weights, finite_hilbert, hilbert_pv, sigma_branch,
    weighted_finite_hilbert, EDGE_BAND, EDGE_THRESHOLD,
};
