mod common;

use common::mat;
use std::f64::consts::PI;
use vkplate::distcalc::{dirac_gaussian_strength, estimate_degree, point_loads, weak_pair_curlcurl, QuadOptions};
use vkplate::fields::ScalarField;
use vkplate::numerics::TestFunction;
use vkplate::scenarios::*;
use vkplate::statics::moment_loop_source;
use vkplate::tensor::Vec2;
use vkplate::vonkarman::curlcurl_point_content;

#[test]
fn disclination_point_content_matches_ridge_integral() {
    for s in [PI, -1.5 * PI, 0.4] {
        let sc = make_disclination(s, mat(), 0.0).unwrap();
        let b = &sc.bundle;
        let ScalarField::Conical { profile, .. } = &b.w else { unreachable!() };
        let half_sq = |x: Vec2, p: Vec2| b.grad_w_sq_jet(x, p).scale(-0.5);
        let pc = curlcurl_point_content(b, &half_sq, 0.0, Vec2::zeros(), 1.0, &QuadOptions::default()).unwrap();
        let strength = dirac_gaussian_strength(profile).unwrap();
        assert!((pc.components.dirac - strength).abs() < 1e-6 * strength.abs(), "s = {s}: {pc:?}");
        assert!(pc.components.dipole_ratio() < 1e-8);
    }
}

#[test]
fn gaussian_curvature_of_a_cone_has_degree_zero() {
    let sc = make_disclination(PI, mat(), 0.0).unwrap();
    let b = &sc.bundle;
    let opts = QuadOptions { rtol: 1e-5, ..Default::default() };
    let pairing = |psi: &TestFunction| {
        let a = |x: Vec2| b.grad_w_sq_jet(x, x).value() * -0.5;
        Ok(weak_pair_curlcurl(b, &a, None, psi, &opts)?.value)
    };
    let d = estimate_degree(&pairing, Vec2::zeros(), 1.0).unwrap();
    assert!(d.degree.abs() < 0.1 && d.reliable, "{d:?}");
}

#[test]
fn ridge_tip_dipole_is_independent_of_the_loop() {
    let (sc, sol) = solve_terminating_fold(0.3, mat()).unwrap();
    let b = &sc.bundle;
    let src = |x: Vec2, p: Vec2| moment_loop_source(b, x, p);
    let loads: Vec<_> = [0.05, 0.2, 0.8].iter().map(|&eps| point_loads(b, Vec2::zeros(), eps, &src).unwrap()).collect();
    for l in &loads {
        assert!(l.f0.abs() < 1e-10, "{l:?}");
        assert!((l.f1 - loads[0].f1).norm() < 1e-10, "{l:?}");
    }
    // the unbalanced dipole lies along the ridge
    assert!(loads[0].f1.x.abs() > 1e-3 * sol.amplitude.abs() && loads[0].f1.y.abs() < 1e-10, "{:?}", loads[0]);
}
