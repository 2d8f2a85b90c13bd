//! Cross-module identities exercised through the public API only.

use proptest::prelude::*;
use specres_core::corpus::hermite;
use specres_core::diagonal::{FourierEngine, Symbol};
use specres_core::grids::{Field, Grid, GridFunction, UniformGrid};
use specres_core::resolutions::{build_case, evaluate_case, CaseName, CaseParams, GridOverrides};
use specres_core::C64;

fn small(n: usize) -> GridOverrides {
    GridOverrides { n: Some(n), ..Default::default() }
}

fn gauss_derivative(grid: Grid, shift: f64) -> GridFunction {
    GridFunction::sample(grid, |x| C64::new(-(x - shift) * (-(x - shift).powi(2)).exp(), 0.0)).unwrap()
}

#[test]
fn every_case_passes_on_a_coarse_grid() {
    for name in CaseName::ALL {
        let n = if name == CaseName::DiracUpsideDown { 1 << 12 } else { 1 << 11 };
        let case = build_case(name, CaseParams::default(), small(n)).unwrap();
        let r = evaluate_case(&case, Some(3)).unwrap();
        assert!(r.pass, "{name}: {:e}", r.max_error);
    }
}

#[test]
fn hilbert_multiplier_squares_to_minus_one() {
    let grid = UniformGrid::centered(64.0, 1 << 13).unwrap();
    let engine = FourierEngine::new(grid, 2).unwrap();
    // vanishing moments keep the transform's tail inside the window
    let f = GridFunction::sample(Grid::Line(grid), |x| C64::new(hermite(4, x - 0.3) * (-0.5 * (x - 0.3).powi(2)).exp(), 0.0)).unwrap();
    let hh = engine.apply(&Symbol::hilbert(), &engine.apply(&Symbol::hilbert(), &f).unwrap()).unwrap();
    let d = hh.distance(&f.scale(C64::new(-1.0, 0.0))).unwrap() / f.norm();
    assert!(d < 1e-6, "{d:e}");
}

#[test]
fn tanh_and_sech_multipliers_are_pythagorean() {
    // tanh^2 + sech^2 = 1 pointwise, so the two outputs split the norm
    let grid = UniformGrid::centered(24.0, 1 << 12).unwrap();
    let engine = FourierEngine::new(grid, 2).unwrap();
    let f = gauss_derivative(Grid::Line(grid), -0.7);
    let t = engine.apply(&Symbol::tanh_pi(1.0), &f).unwrap().norm();
    let s = engine.apply(&Symbol::sech_pi(1.0), &f).unwrap().norm();
    assert!((t * t + s * s - f.norm().powi(2)).abs() / f.norm().powi(2) < 1e-8);
}

#[test]
fn dirac_errors_do_not_depend_on_the_mass() {
    let run = |mass| {
        let params = CaseParams { mass, ..Default::default() };
        evaluate_case(&build_case(CaseName::DiracUpsideDown, params, small(1 << 12)).unwrap(), Some(2)).unwrap()
    };
    let (a, b) = (run(1.0), run(3.0));
    for (x, y) in a.checks.iter().zip(&b.checks) {
        assert!(x.max_error <= 2.0 * y.max_error && y.max_error <= 2.0 * x.max_error, "{} vs {}", x.max_error, y.max_error);
    }
}

#[test]
fn t3d_general_symbol_reduces_at_ell_zero() {
    let case = build_case(CaseName::T3d, CaseParams::default(), small(1 << 11)).unwrap();
    assert_eq!(case.checks.len(), 2);
    for t in [-30.0, -3.0, -0.1, 0.0, 0.2, 4.0, 30.0] {
        assert!((Symbol::phi(0).eval(t) - Symbol::phi_zero().eval(t)).norm() < 1e-12);
    }
}

#[test]
fn reflected_xi_is_the_conjugate_on_the_real_line() {
    for m in [0.0, 0.5, 2.0] {
        let xi = Symbol::xi(m);
        for t in [-4.0, -0.5, 0.0, 1.5, 6.0] {
            assert!((xi.reflected().eval(t) - xi.eval(t).conj()).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn finite_operators_are_linear(alpha in -2.0f64..2.0, beta in -2.0f64..2.0, shift in -0.2f64..0.2) {
        let case = build_case(CaseName::FiniteHilbert, CaseParams::default(), small(1 << 10)).unwrap();
        let (_, members) = case.corpus_members(Some(2)).unwrap();
        let (f, g) = (members[0].as_scalar().unwrap(), members[1].as_scalar().unwrap());
        let g = g.multiply(|x| C64::from_polar(1.0, 5.0 * shift * x)).unwrap();
        let (a, b) = (C64::new(alpha, 0.0), C64::new(0.0, beta));
        let combo = f.scale(a).axpy(C64::new(1.0, 0.0), &g.scale(b)).unwrap();
        for op in &case.operators {
            let lhs = op.apply(&Field::Scalar(combo.clone())).unwrap();
            let of = |h: &GridFunction| op.apply(&Field::Scalar(h.clone())).unwrap().as_scalar().unwrap().clone();
            let rhs = of(f).scale(a).axpy(C64::new(1.0, 0.0), &of(&g).scale(b)).unwrap();
            let scale = f.norm() + g.norm();
            let d = lhs.as_scalar().unwrap().distance(&rhs).unwrap() / scale;
            prop_assert!(d < 1e-10, "{} {}", op.name, d);
        }
    }

    #[test]
    fn symbols_are_bounded_by_one(t in -50.0f64..50.0, m in 0.0f64..4.0) {
        for s in [Symbol::hilbert(), Symbol::tanh_pi(1.0), Symbol::sech_pi(1.0), Symbol::xi(m), Symbol::finite_hilbert()] {
            prop_assert!(s.eval(t).norm() <= 1.0 + 1e-12);
        }
    }
}
