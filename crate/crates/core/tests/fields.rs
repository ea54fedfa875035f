use approx::assert_relative_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;
use vkplate::fields::*;
use vkplate::tensor::{apply_a, outer, Vec2};
use vkplate::VkError;

fn material() -> Material {
    Material::new(1.0, 1.0, 0.3).unwrap()
}

fn conical(profile: AngularProfile) -> FieldBundle {
    let mut b = FieldBundle::new(material(), ScalarField::Conical { origin: Vec2::zeros(), profile });
    b.origin = Some(Vec2::zeros());
    b
}

fn fd_grad(f: &dyn Fn(Vec2) -> f64, x: Vec2, h: f64) -> Vec2 {
    let e1 = Vec2::new(h, 0.0);
    let e2 = Vec2::new(0.0, h);
    Vec2::new((f(x + e1) - f(x - e1)) / (2.0 * h), (f(x + e2) - f(x - e2)) / (2.0 * h))
}

fn random_point(rng: &mut ChaCha8Rng, rmin: f64, rmax: f64) -> Vec2 {
    let r = rng.gen_range(rmin..rmax);
    let t = rng.gen_range(-PI..PI);
    Vec2::new(r * t.cos(), r * t.sin())
}

/// Checks gradient and Hessian of w and φ against nested central differences.
fn check_fd(b: &FieldBundle, points: &[Vec2]) {
    for &x in points {
        let h = 1e-5;
        let w = |p: Vec2| b.sample_at(Quantity::W, p, x).scalar();
        let gw = |p: Vec2| b.sample_at(Quantity::GradW, p, x).vector();
        let g = eval_grad_w(b, x).unwrap();
        let gfd = fd_grad(&w, x, h);
        assert!((g - gfd).norm() <= 1e-6 * g.norm().max(1.0), "grad w at {x:?}: {g:?} vs {gfd:?}");
        let hs = eval_hess_w(b, x).unwrap();
        let c0 = fd_grad(&|p| gw(p).x, x, h);
        let c1 = fd_grad(&|p| gw(p).y, x, h);
        let hfd = vkplate::tensor::Mat2::new(c0.x, c0.y, c1.x, c1.y);
        assert!((hs - hfd).norm() <= 1e-6 * hs.norm().max(1.0), "hess w at {x:?}");

        let phi = |p: Vec2| b.sample_at(Quantity::Phi, p, x).scalar();
        let gp = eval_grad_phi(b, x).unwrap();
        assert!((gp - fd_grad(&phi, x, h)).norm() <= 1e-6 * gp.norm().max(1.0));
        let gphi = |p: Vec2| b.sample_at(Quantity::GradPhi, p, x).vector();
        let hp = eval_hess_phi(b, x).unwrap();
        let d0 = fd_grad(&|p| gphi(p).x, x, h);
        let d1 = fd_grad(&|p| gphi(p).y, x, h);
        let hpfd = vkplate::tensor::Mat2::new(d0.x, d0.y, d1.x, d1.y);
        assert!((hp - hpfd).norm() <= 1e-6 * hp.norm().max(1.0), "hess phi at {x:?}");
    }
}

#[test]
fn conical_and_log_fields_match_finite_differences() {
    let profile = AngularProfile::harmonic(vec![
        Harmonic::constant(0.4),
        Harmonic::cos(0.2, 2.0),
        Harmonic::sin(-0.1, 3.0),
        Harmonic { amplitude: 0.05, wavenumber: 4.0, phase: 0.3 },
    ])
    .unwrap();
    let mut b = conical(profile);
    b.phi = ScalarField::Log { origin: Vec2::zeros(), coefficient: -0.7 };
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pts: Vec<Vec2> = (0..200).map(|_| random_point(&mut rng, 0.1, 1.0)).collect();
    let pts: Vec<Vec2> = pts.into_iter().filter(|p| p.y.atan2(p.x).abs() < PI - 1e-3).collect();
    check_fd(&b, &pts);
}

#[test]
fn cylindrical_and_radial_fields_match_finite_differences() {
    let cyl = PiecewiseCylindricalField {
        direction: Vec2::new(0.6, 0.8),
        q0: 0.1,
        below: vec![0.0, 0.5, 0.2, -0.3],
        above: vec![0.0, -0.5, 1.0, 0.4],
    };
    let mut b = FieldBundle::new(material(), ScalarField::Cylindrical(cyl));
    b.phi = ScalarField::Radial(PiecewiseRadialField {
        center: Vec2::new(0.1, -0.2),
        r0: 0.5,
        inner: vec![1.0, 0.0, 0.3],
        outer: vec![0.2, 1.0, -0.1, 0.05],
        outer_log: 0.0,
    });
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pts: Vec<Vec2> = (0..400)
        .map(|_| random_point(&mut rng, 0.0, 1.0))
        .filter(|p| (p.dot(&Vec2::new(0.6, 0.8)) - 0.1).abs() > 1e-3 && ((p - Vec2::new(0.1, -0.2)).norm() - 0.5).abs() > 1e-3)
        .take(200)
        .collect();
    assert_eq!(pts.len(), 200);
    check_fd(&b, &pts);
}

#[test]
fn eval_examples() {
    let b = conical(AngularProfile::harmonic(vec![Harmonic::constant(1.0)]).unwrap());
    let x = Vec2::new(1.0, 0.0);
    assert_relative_eq!(eval_w(&b, x).unwrap(), 1.0, epsilon = 1e-14);
    assert_relative_eq!((eval_grad_w(&b, x).unwrap() - Vec2::new(1.0, 0.0)).norm(), 0.0, epsilon = 1e-14);

    // trace of the conical Hessian equals (g + g″)/r
    let prof = AngularProfile::harmonic(vec![Harmonic::constant(0.3), Harmonic::cos(0.2, 3.0)]).unwrap();
    let b2 = conical(prof.clone());
    let (r, th) = (0.7f64, 0.4f64);
    let x = Vec2::new(r * th.cos(), r * th.sin());
    let tr = eval_hess_w(&b2, x).unwrap().trace();
    assert_relative_eq!(tr, (prof.g(th) + prof.deriv(th, 2)) / r, epsilon = 1e-12);

    let cyl = PiecewiseCylindricalField { direction: Vec2::new(0.0, 1.0), q0: 0.0, below: vec![0.0, 0.0, 1.0], above: vec![0.0, 0.0, 1.0] };
    let b3 = FieldBundle::new(material(), ScalarField::Cylindrical(cyl));
    let x = Vec2::new(0.5, 3.0);
    assert_relative_eq!(eval_w(&b3, x).unwrap(), 9.0, epsilon = 1e-12);
    assert_relative_eq!((eval_grad_w(&b3, x).unwrap() - Vec2::new(0.0, 6.0)).norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn phi_examples() {
    let mut b = FieldBundle::new(material(), ScalarField::Zero);
    assert_eq!(eval_phi(&b, Vec2::new(0.3, 0.2)).unwrap(), 0.0);
    assert_eq!(eval_hess_phi(&b, Vec2::new(0.3, 0.2)).unwrap().norm(), 0.0);
    b.phi = ScalarField::Log { origin: Vec2::zeros(), coefficient: 2.5 };
    b.origin = Some(Vec2::zeros());
    let th: f64 = 1.1;
    let x = Vec2::new(th.cos(), th.sin());
    assert_relative_eq!(eval_phi(&b, x).unwrap(), 0.0, epsilon = 1e-15);
    let r = 0.6;
    let x = x * r;
    let er = Vec2::new(th.cos(), th.sin());
    let et = Vec2::new(-th.sin(), th.cos());
    let expect = (outer(et, et) - outer(er, er)) * (2.5 / (r * r));
    assert_relative_eq!((eval_hess_phi(&b, x).unwrap() - expect).norm(), 0.0, epsilon = 1e-12);
}

#[test]
fn proximity_errors_name_the_set() {
    let mut b = conical(AngularProfile::harmonic(vec![Harmonic::constant(1.0)]).unwrap());
    b.interfaces.push(InterfaceSpec::segment("fold", Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), 0.1));
    match eval_w(&b, Vec2::new(1e-8, 1e-8)) {
        Err(VkError::Proximity { set, .. }) => assert!(set.contains('O')),
        other => panic!("{other:?}"),
    }
    match eval_w(&b, Vec2::new(0.5, 1e-8)) {
        Err(VkError::Proximity { set, .. }) => assert!(set.contains("fold")),
        other => panic!("{other:?}"),
    }
}

/// Circular fold: w = 0 inside r₀, w = γ₀(r − r₀) outside; ν = −e_r.
fn circular_fold(g0: f64, r0: f64) -> FieldBundle {
    let mut b = FieldBundle::new(
        material(),
        ScalarField::Radial(PiecewiseRadialField { center: Vec2::zeros(), r0, inner: vec![0.0], outer: vec![-g0 * r0, g0], outer_log: 0.0 }),
    );
    b.interfaces.push(InterfaceSpec::circle("ring", Vec2::zeros(), r0, true, g0));
    b
}

#[test]
fn circular_fold_jump_and_average() {
    let (g0, r0) = (0.3, 0.5);
    let b = circular_fold(g0, r0);
    for s in [0.1, 1.0, 2.5] {
        let nu = b.interfaces[0].normal(s);
        let t = b.interfaces[0].tangent(s);
        let jw = jump(&b, Quantity::W, 0, s).unwrap().scalar();
        assert!(jw.abs() < 1e-12);
        let jg = jump(&b, Quantity::GradW, 0, s).unwrap().vector();
        assert_relative_eq!((jg + nu * g0).norm(), 0.0, epsilon = 1e-12);
        let avg = average(&b, Quantity::HessW, 0, s).unwrap().tensor();
        assert_relative_eq!(t.dot(&(avg * t)), g0 / (2.0 * r0), epsilon = 1e-12);
        // offset cross-check
        let jo = jump_offset(&b, Quantity::GradW, 0, s, &default_schedule(1.0)).unwrap().vector();
        assert_relative_eq!((jo - jg).norm(), 0.0, epsilon = 1e-9);
        let ao = average_offset(&b, Quantity::HessW, 0, s, &default_schedule(1.0)).unwrap().tensor();
        assert_relative_eq!((ao - avg).norm(), 0.0, epsilon = 1e-6);
    }
}

#[test]
fn continuous_quantity_average_is_trace() {
    let mut b = circular_fold(0.3, 0.5);
    b.phi = ScalarField::Log { origin: Vec2::zeros(), coefficient: -0.4 };
    let s = 0.8;
    let x = b.interfaces[0].point(s);
    let nu = b.interfaces[0].normal(s);
    let avg = average(&b, Quantity::Stress, 0, s).unwrap().tensor();
    let direct = apply_a(&b.sample_at(Quantity::HessPhi, x, x).tensor());
    assert_relative_eq!((avg - direct).norm(), 0.0, epsilon = 1e-12);
    // ⟨σ ν, ν⟩ = ⟨∇∇φ t, t⟩ = c/r₀² for φ = c ln r
    assert_relative_eq!(nu.dot(&(avg * nu)), -0.4 / 0.25, epsilon = 1e-12);
}

#[test]
fn product_rule_for_jumps() {
    let cyl = PiecewiseCylindricalField {
        direction: Vec2::new(1.0, 0.0),
        q0: 0.0,
        below: vec![0.2, 0.5, 0.2, -0.3],
        above: vec![0.2, -0.5, 1.0, 0.4],
    };
    let mut b = FieldBundle::new(material(), ScalarField::Cylindrical(cyl));
    b.phi = ScalarField::Polynomial(Poly2::new(vec![(1, 0, 0.7), (0, 2, 0.3), (2, 1, -0.2)]));
    b.interfaces.push(InterfaceSpec::segment("fold", Vec2::new(0.0, -1.0), Vec2::new(0.0, 1.0), 1.0));
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let s = rng.gen_range(0.1..1.9);
        let gw_j = jump(&b, Quantity::GradW, 0, s).unwrap().vector();
        let gw_a = average(&b, Quantity::GradW, 0, s).unwrap().vector();
        let gp_j = jump(&b, Quantity::GradPhi, 0, s).unwrap().vector();
        let gp_a = average(&b, Quantity::GradPhi, 0, s).unwrap().vector();
        let plus = b.one_sided(Quantity::GradW, 0, s, Side::Plus).unwrap().vector();
        let minus = b.one_sided(Quantity::GradW, 0, s, Side::Minus).unwrap().vector();
        let pp = b.one_sided(Quantity::GradPhi, 0, s, Side::Plus).unwrap().vector();
        let pm = b.one_sided(Quantity::GradPhi, 0, s, Side::Minus).unwrap().vector();
        for i in 0..2 {
            for j in 0..2 {
                let lhs = plus[i] * pp[j] - minus[i] * pm[j];
                let rhs = gw_j[i] * gp_a[j] + gp_j[j] * gw_a[i];
                assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
            }
        }
        // ⟦w⟧ = 0 across the fold
        assert!(jump(&b, Quantity::W, 0, s).unwrap().scalar().abs() < 1e-14);
    }
}
