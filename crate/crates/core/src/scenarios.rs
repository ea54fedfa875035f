//! Constructors for the canonical singular solutions, each paired with the
//! residual signature it is expected to produce, and the runner that checks it.

use crate::distcalc::dirac_gaussian_strength;
use crate::error::{Result, VkError};
use crate::fields::{
    AngularProfile, FieldBundle, Harmonic, InterfaceSpec, Material, PiecewiseCylindricalField, PiecewiseRadialField, ProfilePiece,
    ScalarField, SectorAffineField, TensorField,
};
use crate::kinematics::{bending_compat_residuals, defect_to_incompatibility, stretching_compat_residuals, strains_from_displacement, DefectSpec};
use crate::numerics::find_root_bracketed;
use crate::residual::{ProbeSet, Region, ResidualRecord, ResidualSet, Tolerances};
use crate::statics::{inplane_balance_residuals, moment_balance_residuals, StressState};
use crate::tensor::{rot90, Vec2};
use crate::vonkarman::{fold_vk_residuals, vk1_case1_residuals, vk1_case2_residuals, vk2_residuals};
use serde::Serialize;
use std::f64::consts::PI;

/// Residual suites a scenario is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    BendingCompat,
    StretchingCompat,
    InplaneBalance,
    MomentBalance,
    Vk1Case1,
    /// Case 2 with no defects; `det_plastic_point` is the point part of Det Λ^p
    Vk1Case2 { det_plastic_point: f64 },
    Vk2,
    Fold,
}

impl Suite {
    /// Equation ids the suite emits for a bundle with or without interfaces and O.
    pub fn equations(&self, interfaces: bool, origin: bool) -> Vec<(&'static str, Region)> {
        use Region::*;
        let (bulk, iface, point): (&[&str], &[&str], &[&str]) = match self {
            Suite::BendingCompat => (
                &["bend.bulk.curl"],
                &["bend.iface.jump", "bend.iface.gamma_cross_nu", "bend.iface.gamma_shape"],
                &["bend.point.loop"],
            ),
            Suite::StretchingCompat => (&["stretch.bulk"], &["stretch.iface.monopole", "stretch.iface.tt"], &["stretch.point.loop"]),
            Suite::InplaneBalance => (&["inplane.bulk.div"], &["inplane.iface.jump", "inplane.iface.tau_nu"], &["inplane.point.loop"]),
            Suite::MomentBalance => (
                &["moment.bulk"],
                &["moment.iface.force", "moment.iface.couple", "moment.iface.n_nu"],
                &["moment.point.loop"],
            ),
            Suite::Vk1Case1 => (&["vk1.bulk"], &["vk1.iface.fold_closure", "vk1.iface.monopole", "vk1.iface.tt"], &["vk1.point"]),
            Suite::Vk1Case2 { .. } => (&["vk1c2.bulk"], &["vk1c2.iface.zeta1", "vk1c2.iface.zeta2"], &["vk1c2.point"]),
            Suite::Vk2 => (&["vk2.bulk"], &["vk2.iface.force", "vk2.iface.couple"], &["vk2.point.loop"]),
            Suite::Fold => (
                &["fold.bulk.compat", "fold.bulk.equil"],
                &["fold.iface.closure", "fold.iface.compat", "fold.iface.compat_tt", "fold.iface.force", "fold.iface.couple"],
                &[],
            ),
        };
        let mut out: Vec<_> = bulk.iter().map(|e| (*e, Bulk)).collect();
        if interfaces {
            out.extend(iface.iter().map(|e| (*e, Interface)));
        }
        if origin {
            out.extend(point.iter().map(|e| (*e, Point)));
        }
        out
    }

    pub fn run(&self, bundle: &FieldBundle, probes: &ProbeSet) -> Result<ResidualSet> {
        match self {
            Suite::BendingCompat => bending_compat_residuals(&strains_from_displacement(bundle), probes),
            Suite::StretchingCompat => stretching_compat_residuals(&strains_from_displacement(bundle), probes),
            Suite::InplaneBalance => inplane_balance_residuals(&StressState::from_bundle(bundle), probes),
            Suite::MomentBalance => moment_balance_residuals(&StressState::from_bundle(bundle), probes),
            Suite::Vk1Case1 => vk1_case1_residuals(bundle, probes),
            Suite::Vk1Case2 { det_plastic_point } => {
                let defects = DefectSpec::none(bundle.interfaces.len());
                let inc = defect_to_incompatibility(&defects, bundle);
                vk1_case2_residuals(bundle, &inc, *det_plastic_point, probes)
            }
            Suite::Vk2 => vk2_residuals(bundle, probes),
            Suite::Fold => fold_vk_residuals(bundle, probes),
        }
    }
}

/// How an expected failure must look.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Signature {
    /// the largest raw residual equals `value` to `rtol`
    Magnitude { value: f64, rtol: f64 },
    /// point loads at O: no net point force, a nonzero dipole f⃗₁ (a gradient of
    /// a Dirac) at the worst loop radius
    DiracGradient,
    /// point content at O: Dirac component `value` to `rtol`, no dipole
    Dirac { value: f64, rtol: f64 },
}

impl Signature {
    pub fn matches(&self, r: &ResidualRecord) -> bool {
        match *self {
            Signature::Magnitude { value, rtol } => (r.max_raw - value.abs()).abs() <= rtol * value.abs().max(f64::MIN_POSITIVE),
            Signature::DiracGradient => {
                // worst = [ε, f₀ − declared, f⃗₁ − declared]
                r.worst.len() == 4 && {
                    let f1 = r.worst[2].hypot(r.worst[3]);
                    f1 > 0.0 && r.worst[1].abs() <= 1e-6 * f1
                }
            }
            Signature::Dirac { value, rtol } => {
                r.worst.len() == 3 && {
                    let dipole = r.worst[1].hypot(r.worst[2]);
                    (r.worst[0] - value).abs() <= rtol * value.abs() && dipole <= rtol * value.abs()
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "expect", rename_all = "snake_case")]
pub enum Expectation {
    Pass,
    Fail { signature: Signature },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectedEquation {
    pub equation: String,
    pub region: Region,
    pub expectation: Expectation,
    pub description: String,
}

/// Expected outcome of every equation of the applicable suites.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioExpectation {
    pub suites: Vec<Suite>,
    pub equations: Vec<ExpectedEquation>,
}

impl ScenarioExpectation {
    /// All equations of `suites` expected to pass.
    pub fn all_pass(suites: Vec<Suite>, bundle: &FieldBundle) -> Self {
        let (i, o) = (!bundle.interfaces.is_empty(), bundle.origin.is_some());
        let equations = suites
            .iter()
            .flat_map(|s| s.equations(i, o))
            .map(|(e, region)| ExpectedEquation { equation: e.into(), region, expectation: Expectation::Pass, description: String::new() })
            .collect();
        ScenarioExpectation { suites, equations }
    }

    /// Mark an equation as expected to fail with `signature`.
    pub fn expect_fail(mut self, equation: &str, signature: Signature, description: &str) -> Self {
        let e = self.equations.iter_mut().find(|e| e.equation == equation).unwrap_or_else(|| panic!("unknown equation {equation}"));
        e.expectation = Expectation::Fail { signature };
        e.description = description.into();
        self
    }

    pub fn get(&self, equation: &str) -> Option<&ExpectedEquation> {
        self.equations.iter().find(|e| e.equation == equation)
    }
}

/// A constructed bundle with its expectation, solved parameters, and the
/// orientation conventions it was built under.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub id: String,
    pub bundle: FieldBundle,
    pub expectation: ScenarioExpectation,
    pub parameters: Vec<(String, f64)>,
    pub conventions: Vec<String>,
}

impl Scenario {
    pub fn parameter(&self, name: &str) -> Option<f64> {
        self.parameters.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    /// Run every applicable suite and compare with the expectation.
    pub fn evaluate(&self, probes: &ProbeSet, tol: &Tolerances) -> Result<Vec<EquationOutcome>> {
        let mut records = ResidualSet::default();
        for s in &self.expectation.suites {
            let set = s.run(&self.bundle, probes)?;
            // suites emit interface records even without interfaces; those carry no probes
            records.records.extend(set.records.into_iter().filter(|r| r.probes > 0));
        }
        let mut out = vec![];
        for e in &self.expectation.equations {
            let record = records.get(&e.equation).cloned().ok_or_else(|| {
                VkError::Precondition(format!("suite produced no record for {}", e.equation))
            })?;
            let passed = record.passes(tol.for_region(e.region));
            let matched = match e.expectation {
                Expectation::Pass => passed,
                Expectation::Fail { signature } => !passed && signature.matches(&record),
            };
            out.push(EquationOutcome { record, expectation: e.expectation, description: e.description.clone(), passed, matched });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquationOutcome {
    pub record: ResidualRecord,
    pub expectation: Expectation,
    pub description: String,
    pub passed: bool,
    pub matched: bool,
}

fn new_bundle(material: Material, w: ScalarField) -> FieldBundle {
    let mut b = FieldBundle::new(material, w);
    b.inextensible = true;
    // graded quadrature toward O samples well inside the default exclusion radius
    b.exclusion = 1e-12;
    b
}

const FULL: [Suite; 6] =
    [Suite::BendingCompat, Suite::StretchingCompat, Suite::InplaneBalance, Suite::MomentBalance, Suite::Vk1Case1, Suite::Vk2];

fn full_with_fold() -> Vec<Suite> {
    let mut s = FULL.to_vec();
    s.push(Suite::Fold);
    s
}

/// Conical disclination of strength s at O. s > 0: g = √(s/π), φ = −D ln r;
/// s < 0: g = √(−2s/3π) cos(2θ + phase), φ = 3D ln r. The Dirac of ½[W,W] is
/// balanced by e^p = −(s/2π) ln r I.
pub fn make_disclination(s: f64, material: Material, phase: f64) -> Result<Scenario> {
    if s == 0.0 || !s.is_finite() {
        return Err(VkError::Precondition(format!("disclination strength must be nonzero and finite (got {s}); use make_dcone")));
    }
    let d = material.d;
    let (term, phi_c) = if s > 0.0 {
        (Harmonic::constant((s / PI).sqrt()), -d)
    } else {
        (Harmonic { amplitude: (-2.0 * s / (3.0 * PI)).sqrt(), wavenumber: 2.0, phase }, 3.0 * d)
    };
    let profile = AngularProfile::harmonic(vec![term])?;
    let mut b = new_bundle(material, ScalarField::Conical { origin: Vec2::zeros(), profile });
    b.origin = Some(Vec2::zeros());
    b.phi = ScalarField::Log { origin: Vec2::zeros(), coefficient: phi_c };
    b.plastic_stretch = TensorField::IsotropicLog { origin: Vec2::zeros(), coefficient: -s / (2.0 * PI) };
    let expectation = ScenarioExpectation::all_pass(FULL.to_vec(), &b);
    Ok(Scenario {
        id: "disclination".into(),
        bundle: b,
        expectation,
        parameters: vec![("strength".into(), s), ("stress_coefficient".into(), phi_c), ("phase".into(), phase)],
        conventions: vec!["w = r g(theta) about O; plastic stretch -(s/2pi) ln r I".into()],
    })
}

/// Developable cone w = r g(θ) with zero net Gaussian strength.
pub fn make_dcone(profile: AngularProfile, material: Material) -> Result<Scenario> {
    let strength = dirac_gaussian_strength(&profile)?;
    if strength.abs() >= 1e-10 {
        return Err(VkError::Precondition(format!("d-cone profile has nonzero strength {strength:.6e}")));
    }
    let mut b = new_bundle(material, ScalarField::Conical { origin: Vec2::zeros(), profile });
    b.origin = Some(Vec2::zeros());
    let expectation = ScenarioExpectation::all_pass(vec![Suite::BendingCompat, Suite::StretchingCompat, Suite::Vk1Case1], &b);
    Ok(Scenario {
        id: "dcone".into(),
        bundle: b,
        expectation,
        parameters: vec![("strength".into(), strength)],
        conventions: vec!["w = r g(theta) about O, zero stress function".into()],
    })
}

/// Straight fold along x₁ = 0: f = 0 for q = x₁ ≤ 0 and f = γ₀q + k₁q² + k₂q³
/// beyond, with k₁ = b₀/2D − b₁a₁/2D and k₂ = b₁/6D. The q ≤ 0 half is held flat,
/// so the fold line carries the support reactions as line force and couple.
pub fn make_linear_fold(gamma0: f64, b0: f64, b1: f64, a0: f64, a1: f64, material: Material) -> Result<Scenario> {
    if !(a0 <= 0.0 && 0.0 <= a1) {
        return Err(VkError::Precondition(format!("need a0 <= 0 <= a1, got a0 = {a0}, a1 = {a1}")));
    }
    let d = material.d;
    let k1 = b0 / (2.0 * d) - b1 * a1 / (2.0 * d);
    let k2 = b1 / (6.0 * d);
    let cyl = PiecewiseCylindricalField { direction: Vec2::new(1.0, 0.0), q0: 0.0, below: vec![0.0], above: vec![0.0, gamma0, k1, k2] };
    let mut b = new_bundle(material, ScalarField::Cylindrical(cyl));
    b.scale = a1.max(-a0).max(1.0);
    let l = 2.0 * b.scale;
    // t = e₂, ν = −e₁: the + side is q > 0
    let mut s = InterfaceSpec::segment("fold", Vec2::new(0.0, -l), Vec2::new(0.0, l), gamma0);
    s.line_couple = 2.0 * d * k1;
    s.line_force = -6.0 * d * k2;
    b.interfaces.push(s);
    let expectation = ScenarioExpectation::all_pass(full_with_fold(), &b);
    Ok(Scenario {
        id: "linear_fold".into(),
        bundle: b,
        expectation,
        parameters: vec![
            ("k1".into(), k1),
            ("k2".into(), k2),
            ("line_force".into(), -6.0 * d * k2),
            ("line_couple".into(), 2.0 * d * k1),
        ],
        conventions: vec![
            "fold on x1 = 0 with t = e2, nu = -e1; the + side is x1 > 0".into(),
            "closure gamma = gamma0 nu(x)nu gives f'(0+) - f'(0-) = +gamma0".into(),
            "x1 <= 0 held flat: line force and couple are its support reactions".into(),
        ],
    })
}

fn circular_bundle(gamma0: f64, r0: f64, material: Material, c: f64, couple: f64) -> FieldBundle {
    let w = ScalarField::Radial(PiecewiseRadialField {
        center: Vec2::zeros(),
        r0,
        inner: vec![gamma0 * r0],
        outer: vec![0.0, gamma0],
        outer_log: 0.0,
    });
    let mut b = new_bundle(material, w);
    b.scale = 2.0 * r0;
    // uniform tension inside matching σν of c ln r at r₀, with φ and ∇φ continuous
    b.phi = ScalarField::Radial(PiecewiseRadialField {
        center: Vec2::zeros(),
        r0,
        inner: vec![c * (r0.ln() - 0.5), 0.0, c / (2.0 * r0 * r0)],
        outer: vec![0.0],
        outer_log: c,
    });
    b.plastic_stretch = TensorField::RadialDyadOutside { center: Vec2::zeros(), r0, coefficient: 0.5 * gamma0 * gamma0 };
    let mut s = InterfaceSpec::circle("fold", Vec2::zeros(), r0, true, gamma0);
    s.line_couple = couple;
    b.interfaces.push(s);
    b
}

/// Plate folded about |x| = r₀: w = γ₀r₀ inside, γ₀r outside, e^p = ½γ₀² e_r⊗e_r
/// outside, φ = c ln r outside with c solved from the outer bulk equilibrium.
/// With `include_couple` the fold carries the couple its couple equation needs.
pub fn make_circular_fold(gamma0: f64, r0: f64, material: Material, include_couple: bool) -> Result<Scenario> {
    if !(r0 > 0.0) {
        return Err(VkError::Precondition(format!("fold radius must be positive, got {r0}")));
    }
    let d = material.d;
    let probe = Vec2::new(1.5 * r0, 0.4 * r0);
    let bulk = |c: f64| {
        let b = circular_bundle(gamma0, r0, material, c, 0.0);
        let w = b.w_jet(probe, probe);
        let sigma = crate::tensor::apply_a(&b.phi_jet(probe, probe).hess());
        d * w.bilaplacian() - sigma.component_mul(&w.hess()).sum()
    };
    let c = if gamma0 == 0.0 {
        0.0
    } else {
        let mut h = d.max(1.0);
        while bulk(-h) * bulk(h) > 0.0 && h < 1e12 {
            h *= 4.0;
        }
        find_root_bracketed(bulk, -h, h, 1e-14 * h)?
    };
    // couple equation D((1−ν)k⟨⟦∇w⟧,ν⟩ + ⟦Δw⟧) with ⟨⟦∇w⟧,ν⟩ = −γ₀, k = 1/r₀
    let solved_couple = d * (gamma0 / r0 - (1.0 - material.nu) * gamma0 / r0);
    let couple = if include_couple { solved_couple } else { 0.0 };
    let b = circular_bundle(gamma0, r0, material, c, couple);
    let mut expectation = ScenarioExpectation::all_pass(full_with_fold(), &b);
    if !include_couple && solved_couple != 0.0 {
        let sig = Signature::Magnitude { value: solved_couple, rtol: 1e-8 };
        let why = "no fold couple: the jump of the bending moment is unbalanced";
        for e in ["vk2.iface.couple", "fold.iface.couple", "moment.iface.couple"] {
            expectation = expectation.expect_fail(e, sig, why);
        }
    }
    Ok(Scenario {
        id: "circular_fold".into(),
        bundle: b,
        expectation,
        parameters: vec![
            ("stress_coefficient".into(), c),
            ("stress_coefficient_stated".into(), -gamma0),
            ("line_couple".into(), couple),
            ("line_couple_solved".into(), solved_couple),
            ("line_couple_stated".into(), -d * gamma0 / r0),
        ],
        conventions: vec![
            "circle with inward normal nu = -e_r, counterclockwise, curvature +1/r0; the + side is r > r0".into(),
            "plastic stretch (gamma0^2/2) e_r(x)e_r outside".into(),
            "inside r0 the stress is the uniform tension c/r0^2 I".into(),
        ],
    })
}

/// Exponent, amplitude, and stress coefficient of the terminating ridge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RidgeSolution {
    pub mu: f64,
    pub amplitude: f64,
    /// φ = Dλ ln r with λ = μ² − 1
    pub lambda: f64,
}

/// (1 + μ²) sin 2πμ + 2π(1 − μ²)μ
pub fn ridge_characteristic(mu: f64) -> f64 {
    (1.0 + mu * mu) * (2.0 * PI * mu).sin() + 2.0 * PI * (1.0 - mu * mu) * mu
}

/// Root of the characteristic equation in [0.5, 0.99] and a = γ₀/(2μ sin πμ).
pub fn solve_ridge(gamma0: f64, tol: f64) -> Result<RidgeSolution> {
    if gamma0 == 0.0 || !gamma0.is_finite() {
        return Err(VkError::Precondition(format!("fold angle must be nonzero and finite, got {gamma0}")));
    }
    let mu = find_root_bracketed(ridge_characteristic, 0.5, 0.99, tol)?;
    let amplitude = gamma0 / (2.0 * mu * (PI * mu).sin());
    Ok(RidgeSolution { mu, amplitude, lambda: mu * mu - 1.0 })
}

/// Fold along the ray θ = π ending at O: w = r·a cos μθ on (−π, π],
/// φ = D(μ² − 1) ln r. The point equilibrium at O is expected to fail with a
/// dipole signature.
pub fn solve_terminating_fold(gamma0: f64, material: Material) -> Result<(Scenario, RidgeSolution)> {
    let sol = solve_ridge(gamma0, 1e-14)?;
    let profile = AngularProfile::piecewise(vec![ProfilePiece {
        start: -PI,
        end: PI,
        terms: vec![Harmonic::cos(sol.amplitude, sol.mu)],
    }])?;
    let mut b = new_bundle(material, ScalarField::Conical { origin: Vec2::zeros(), profile });
    b.origin = Some(Vec2::zeros());
    b.phi = ScalarField::Log { origin: Vec2::zeros(), coefficient: material.d * sol.lambda };
    // t = e₁, ν = e₂: the + side is θ → −π
    b.interfaces.push(InterfaceSpec::segment("ridge", Vec2::new(-2.0 * b.scale, 0.0), Vec2::zeros(), gamma0));
    let why = "equilibrium at the ridge tip leaves an unbalanced point dipole";
    let expectation = ScenarioExpectation::all_pass(full_with_fold(), &b)
        .expect_fail("moment.point.loop", Signature::DiracGradient, why)
        .expect_fail("vk2.point.loop", Signature::DiracGradient, why);
    Ok((
        Scenario {
            id: "terminating_fold".into(),
            bundle: b,
            expectation,
            parameters: vec![("mu".into(), sol.mu), ("amplitude".into(), sol.amplitude), ("lambda".into(), sol.lambda)],
            conventions: vec![
                "ridge from (-2R, 0) to O with t = e1, nu = e2; the + side is below the ray".into(),
                "g'(pi) - g'(-pi) = -gamma0, so a = gamma0 / (2 mu sin(pi mu))".into(),
            ],
        },
        sol,
    ))
}

/// Point strength of Det Λ^p for folds meeting at O, angles sorted ccw in (−π, π]:
/// −½ Σ_{i<j} γᵢγⱼ⟨νᵢ, tⱼ⟩.
pub fn fold_vertex_strength(folds: &[(f64, f64)]) -> f64 {
    let mut sum = 0.0;
    for i in 0..folds.len() {
        for j in i + 1..folds.len() {
            let (ti, gi) = folds[i];
            let (tj, gj) = folds[j];
            sum += gi * gj * (tj - ti).sin();
        }
    }
    -0.5 * sum
}

fn normalize_angle(a: f64) -> f64 {
    let t = (a + PI).rem_euclid(2.0 * PI) - PI;
    if t <= -PI {
        t + 2.0 * PI
    } else {
        t
    }
}

/// Straight folds from O along the given tangent angles: sector-wise affine w
/// with ∇w = Σ_{j≤i} γⱼνⱼ in the sector ccw of ray i. Returns the double-sum
/// strength alongside.
pub fn make_tetrahedral_folds(folds: &[(f64, f64)], material: Material) -> Result<(Scenario, f64)> {
    if folds.len() < 2 {
        return Err(VkError::Precondition("need at least two folds".into()));
    }
    let mut sorted: Vec<(f64, f64)> = folds.iter().map(|&(a, g)| (normalize_angle(a), g)).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    if sorted.windows(2).any(|w| w[1].0 - w[0].0 < 1e-9) {
        return Err(VkError::Precondition("fold directions must be distinct".into()));
    }
    let nus: Vec<Vec2> = sorted.iter().map(|&(a, _)| rot90(Vec2::new(a.cos(), a.sin()))).collect();
    let closure: Vec2 = sorted.iter().zip(&nus).map(|(&(_, g), n)| n * g).sum();
    if closure.norm() > 1e-10 {
        return Err(VkError::Closure { residual: closure.norm() });
    }
    let mut gradients = vec![];
    let mut acc = Vec2::zeros();
    for (&(_, g), n) in sorted.iter().zip(&nus) {
        acc += n * g;
        gradients.push(acc);
    }
    let w = ScalarField::SectorAffine(SectorAffineField { origin: Vec2::zeros(), rays: sorted.iter().map(|f| f.0).collect(), gradients });
    let mut b = new_bundle(material, w);
    b.origin = Some(Vec2::zeros());
    for (k, &(a, g)) in sorted.iter().enumerate() {
        let end = Vec2::new(a.cos(), a.sin()) * (2.0 * b.scale);
        b.interfaces.push(InterfaceSpec::segment(&format!("fold{k}"), Vec2::zeros(), end, g));
    }
    let mut strength = fold_vertex_strength(&sorted);
    if strength.abs() <= 1e-14 * sorted.iter().map(|f| f.1 * f.1).sum::<f64>() {
        // collinear folds: the double sum is zero up to the roundoff of sin π
        strength = 0.0;
    }
    let mut suites = vec![Suite::BendingCompat, Suite::StretchingCompat, Suite::InplaneBalance, Suite::MomentBalance];
    suites.extend([Suite::Vk1Case2 { det_plastic_point: strength }, Suite::Vk2, Suite::Fold]);
    let mut expectation = ScenarioExpectation::all_pass(suites, &b);
    if strength != 0.0 {
        expectation = expectation.expect_fail(
            "vk1c2.point",
            Signature::Dirac { value: -strength, rtol: 1e-4 },
            "the measured Dirac of the bracket is opposite in sign to the double-sum strength",
        );
    }
    Ok((
        Scenario {
            id: "tetrahedral".into(),
            bundle: b,
            expectation,
            parameters: vec![("strength_formula".into(), strength)],
            conventions: vec!["folds run outward from O with t_i along the given angle and nu_i = rot90(t_i)".into()],
        },
        strength,
    ))
}
