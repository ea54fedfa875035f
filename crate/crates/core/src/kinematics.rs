//! Strains, compatibility residuals, and defect incompatibility densities.

use crate::distcalc::{loop_integral_curl_rows, point_loads};
use crate::error::Result;
use crate::fields::{FieldBundle, Quantity, ScalarField, Side, TensorField, TensorJet};
use crate::numerics::{fd_derivative, Jet};
use crate::residual::{relative, Accumulator, ProbeSet, Region, ResidualSet};
use crate::tensor::{contract_r, curl3, form, inner, outer, Mat2, Vec2};

/// (11, 12, 22) → 𝔸 applied componentwise.
pub fn apply_a_jet(a: &TensorJet) -> TensorJet {
    TensorJet([a.0[2], -a.0[1], a.0[0]])
}

/// Strains of a bundle: bulk e and λ = ∇∇w, interfacial γ = −⟦∇w⟧⊗ν, with
/// elastic/plastic splits.
#[derive(Clone, Copy, Debug)]
pub struct StrainState<'a> {
    pub bundle: &'a FieldBundle,
}

pub fn strains_from_displacement(bundle: &FieldBundle) -> StrainState<'_> {
    StrainState { bundle }
}

impl<'a> StrainState<'a> {
    pub fn e_jet(&self, x: Vec2, probe: Vec2) -> TensorJet {
        self.bundle.stretch_jet(x, probe)
    }

    pub fn lambda_jet(&self, x: Vec2, probe: Vec2) -> TensorJet {
        let w = self.bundle.w_jet(x, probe);
        let (w1, w2) = (w.diff(0), w.diff(1));
        TensorJet([w1.diff(0), w1.diff(1), w2.diff(1)])
    }

    pub fn e(&self, x: Vec2) -> Mat2 {
        self.e_jet(x, x).value()
    }

    pub fn lambda(&self, x: Vec2) -> Mat2 {
        self.bundle.w_jet(x, x).hess()
    }

    /// e^e = e − e^p (zero when inextensibility is imposed with e^p given).
    pub fn e_elastic(&self, x: Vec2) -> Mat2 {
        self.e(x) - self.bundle.plastic_stretch.jet_at(x, x).value()
    }

    pub fn lambda_elastic(&self, x: Vec2) -> Mat2 {
        self.lambda(x) - self.bundle.plastic_bend.jet_at(x, x).value()
    }

    /// γ = −⟦∇w⟧⊗ν on interface i.
    pub fn gamma(&self, i: usize, s: f64) -> Result<Mat2> {
        let j = crate::fields::jump(self.bundle, Quantity::GradW, i, s)?.vector();
        Ok(-outer(j, self.bundle.interfaces[i].normal(s)))
    }

    /// γ^p = γ₀ ν⊗ν.
    pub fn gamma_plastic(&self, i: usize, s: f64) -> Mat2 {
        let iface = &self.bundle.interfaces[i];
        let nu = iface.normal(s);
        outer(nu, nu) * iface.gamma0
    }

    pub fn gamma_elastic(&self, i: usize, s: f64) -> Result<Mat2> {
        Ok(self.gamma(i, s)? - self.gamma_plastic(i, s))
    }
}

fn at(x: Vec2) -> [f64; 2] {
    [x.x, x.y]
}

fn vec_residual(acc: &mut Accumulator, raw: Vec2, terms: &[f64], loc: &[f64]) {
    acc.push(raw.norm(), relative(raw.norm(), terms), loc);
}

/// Bending compatibility: curl λ = 0 in the bulk; ⟦λ⟧t + d(γν)/ds = 0 and γ×ν = 0
/// on S; the loop ∫λ e_θ dl + Σ γ e_θ = 0 around O.
pub fn bending_compat_residuals(state: &StrainState, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = state.bundle;
    let mut out = ResidualSet::default();
    let mut bulk = Accumulator::new("bend.bulk.curl", Region::Bulk);
    for &x in &probes.bulk {
        let g = state.lambda_jet(x, x).grad();
        let c = curl3(&g);
        let terms = [g[0][(0, 1)], g[1][(0, 0)], g[0][(1, 1)], g[1][(1, 0)]];
        vec_residual(&mut bulk, c, &terms, &at(x));
    }
    out.push(bulk.finish());

    let mut jump = Accumulator::new("bend.iface.jump", Region::Interface);
    let mut cross = Accumulator::new("bend.iface.gamma_cross_nu", Region::Interface);
    let mut shape = Accumulator::new("bend.iface.gamma_shape", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu) = (iface.tangent(s), iface.normal(s));
        let jl = crate::fields::jump(b, Quantity::HessW, i, s)?.tensor() * t;
        let h = 1e-3 * iface.length();
        let d0 = fd_derivative(|q| Ok((state.gamma(i, q)? * iface.normal(q)).x), s, 1, h)?;
        let d1 = fd_derivative(|q| Ok((state.gamma(i, q)? * iface.normal(q)).y), s, 1, h)?;
        let dgn = Vec2::new(d0, d1);
        let lp = crate::fields::average(b, Quantity::HessW, i, s)?.tensor().norm() + 0.5 * jl.norm();
        vec_residual(&mut jump, jl + dgn, &[jl.norm(), dgn.norm(), lp], &[i as f64, s]);
        let g = state.gamma(i, s)?;
        let gt = g * t;
        vec_residual(&mut cross, gt, &[g.norm()], &[i as f64, s]);
        let nn = outer(nu, nu);
        let off = g - nn * inner(&g, &nn);
        shape.push(off.norm(), relative(off.norm(), &[g.norm()]), &[i as f64, s]);
    }
    out.push(jump.finish());
    out.push(cross.finish());
    out.push(shape.finish());

    if let Some(o) = b.origin {
        let mut lp = Accumulator::new("bend.point.loop", Region::Point);
        for &eps in &probes.loop_radii {
            let bulk_l = |x: Vec2| state.lambda(x);
            // a failed trace poisons the loop value and shows up as a NaN residual
            let line = |i: usize, s: f64| state.gamma(i, s).unwrap_or(Mat2::from_element(f64::NAN));
            let v = loop_integral_curl_rows(b, o, eps, &bulk_l, &line)?;
            let mut scale = loop_scale_rows(o, eps, state);
            for (i, iface) in b.interfaces.iter().enumerate() {
                for s in iface.circle_crossings(o, eps) {
                    scale += state.gamma(i, s).map(|g| g.norm()).unwrap_or(0.0);
                }
            }
            lp.push(v.norm(), relative(v.norm(), &[scale]), &[eps]);
        }
        out.push(lp.finish());
    }
    Ok(out)
}

/// ∫|λ| dl over the loop, used to normalize loop residuals.
fn loop_scale_rows(o: Vec2, eps: f64, state: &StrainState) -> f64 {
    let n = 64;
    (0..n)
        .map(|k| {
            let th = -std::f64::consts::PI + (k as f64 + 0.5) * 2.0 * std::f64::consts::PI / n as f64;
            state.lambda(o + Vec2::new(th.cos(), th.sin()) * eps).norm()
        })
        .sum::<f64>()
        * 2.0
        * std::f64::consts::PI
        * eps
        / n as f64
}

/// 𝔸(e − ½∇w⊗∇w) and its divergence, the source of the stretching point loads.
pub fn stretch_loop_source(state: &StrainState, x: Vec2, probe: Vec2) -> (Mat2, Vec2) {
    let e = state.e_jet(x, probe);
    let q = state.bundle.grad_w_sq_jet(x, probe).scale(-0.5);
    let a = apply_a_jet(&e.add(&q));
    (a.value(), crate::tensor::div3(&a.grad()))
}

/// Stretching compatibility: curl curl e + det λ = 0 in the bulk;
/// ⟨{λ},t⊗t⟩⟨γ,ν⊗ν⟩ + ⟨⟦∇e⟧,r⟩ + k⟨⟦e⟧,ν⊗ν⟩ = 0 and ⟨⟦e⟧,t⊗t⟩ = 0 on S;
/// vanishing point loads of the Div Div loop on 𝔸(e − ½∇w⊗∇w) around O.
pub fn stretching_compat_residuals(state: &StrainState, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = state.bundle;
    let mut out = ResidualSet::default();
    let mut bulk = Accumulator::new("stretch.bulk", Region::Bulk);
    for &x in &probes.bulk {
        let ej = state.e_jet(x, x);
        let cc = ej.curl_curl();
        let l = state.lambda(x);
        let det = l.determinant();
        let [a, b12, c] = &ej.0;
        let terms = [c.partial(2, 0), 2.0 * b12.partial(1, 1), a.partial(0, 2), l[(0, 0)] * l[(1, 1)], l[(0, 1)] * l[(0, 1)]];
        bulk.push(cc + det, relative(cc + det, &terms), &at(x));
    }
    out.push(bulk.finish());

    let mut mono = Accumulator::new("stretch.iface.monopole", Region::Interface);
    let mut tt = Accumulator::new("stretch.iface.tt", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu, k) = (iface.tangent(s), iface.normal(s), iface.curvature(s));
        let ep = b.sided_eval(i, s, Side::Plus, |x, p| state.e_jet(x, p))?;
        let em = b.sided_eval(i, s, Side::Minus, |x, p| state.e_jet(x, p))?;
        let je = ep.value() - em.value();
        let (gp, gm) = (ep.grad(), em.grad());
        let jg = [gp[0] - gm[0], gp[1] - gm[1]];
        let lavg = crate::fields::average(b, Quantity::HessW, i, s)?.tensor();
        let g = state.gamma(i, s)?;
        let t1 = form(&lavg, t, t) * form(&g, nu, nu);
        let t2 = contract_r(&jg, t, nu);
        let t3 = k * form(&je, nu, nu);
        mono.push_terms(&[t1, t2, t3], &[], &[i as f64, s]);
        let jtt = form(&je, t, t);
        tt.push(jtt, relative(jtt, &[ep.value().norm(), em.value().norm()]), &[i as f64, s]);
    }
    out.push(mono.finish());
    out.push(tt.finish());

    if let Some(o) = b.origin {
        let mut lp = Accumulator::new("stretch.point.loop", Region::Point);
        let src = |x: Vec2, p: Vec2| stretch_loop_source(state, x, p);
        for &eps in &probes.loop_radii {
            let loads = point_loads(b, o, eps, &src)?;
            let raw = loads.f0.abs().max(loads.f1.norm());
            // normalize by the size of the loop integrand
            let scale = loop_moment_scale(o, eps, &src);
            lp.push(raw, relative(raw, &[scale]), &[eps, loads.f0, loads.f1.x, loads.f1.y]);
        }
        out.push(lp.finish());
    }
    Ok(out)
}

/// ∫(|a| + |x − O||div a|) dl over the loop.
pub(crate) fn loop_moment_scale(o: Vec2, eps: f64, src: &dyn Fn(Vec2, Vec2) -> (Mat2, Vec2)) -> f64 {
    let n = 64;
    let mut sum = 0.0;
    for k in 0..n {
        let th = -std::f64::consts::PI + (k as f64 + 0.5) * 2.0 * std::f64::consts::PI / n as f64;
        let x = o + Vec2::new(th.cos(), th.sin()) * eps;
        let (a, d) = src(x, x);
        if a.iter().all(|v| v.is_finite()) && d.iter().all(|v| v.is_finite()) {
            sum += a.norm() + eps * d.norm();
        }
    }
    sum * 2.0 * std::f64::consts::PI * eps / n as f64
}

/// Polynomial line density in arclength: Σ cₙ sⁿ.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LineDensity(pub Vec<f64>);

impl LineDensity {
    pub fn constant(c: f64) -> Self {
        LineDensity(vec![c])
    }

    pub fn at(&self, s: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * s + c)
    }
}

/// Defect densities: bulk and interfacial disclinations and dislocations,
/// metric anomaly, and point content at O.
#[derive(Clone, Debug, PartialEq)]
pub struct DefectSpec {
    pub theta_bulk: ScalarField,
    /// per interface
    pub theta_line: Vec<LineDensity>,
    pub alpha_bulk: [ScalarField; 2],
    /// per interface: (tangential, normal) components of α_S
    pub alpha_line: Vec<[LineDensity; 2]>,
    pub metric_anomaly: TensorField,
    /// coefficient of δ_O in the incompatibility
    pub point: f64,
}

impl DefectSpec {
    pub fn none(interfaces: usize) -> Self {
        DefectSpec {
            theta_bulk: ScalarField::Zero,
            theta_line: vec![LineDensity::default(); interfaces],
            alpha_bulk: [ScalarField::Zero, ScalarField::Zero],
            alpha_line: vec![[LineDensity::default(), LineDensity::default()]; interfaces],
            metric_anomaly: TensorField::Zero,
            point: 0.0,
        }
    }
}

/// Incompatibility densities generated by a DefectSpec on the bundle geometry.
#[derive(Clone, Copy, Debug)]
pub struct Incompatibility<'a> {
    pub defects: &'a DefectSpec,
    pub bundle: &'a FieldBundle,
}

pub fn defect_to_incompatibility<'a>(defects: &'a DefectSpec, bundle: &'a FieldBundle) -> Incompatibility<'a> {
    Incompatibility { defects, bundle }
}

impl<'a> Incompatibility<'a> {
    fn alpha_jets(&self, x: Vec2, probe: Vec2) -> [Jet; 2] {
        [self.defects.alpha_bulk[0].jet_at(x, probe), self.defects.alpha_bulk[1].jet_at(x, probe)]
    }

    /// η = curl α_B + θ_B + curl curl q.
    pub fn eta(&self, x: Vec2) -> Result<f64> {
        self.bundle.check_bulk(x)?;
        let [a1, a2] = self.alpha_jets(x, x);
        let curl = a2.partial(1, 0) - a1.partial(0, 1);
        let theta = self.defects.theta_bulk.jet_at(x, x).value();
        let cc = self.defects.metric_anomaly.jet_at(x, x).curl_curl();
        Ok(curl + theta + cc)
    }

    /// (ζ₁, ζ₂) on interface i at s:
    /// ζ₁ = d⟨⟦α_B⟧,t⟩/ds + ⟨α_S,ν⟩ + θ_S + ⟨⟦∇q⟧,r⟩ + k⟨⟦q⟧,ν⊗ν⟩,
    /// ζ₂ = ⟨α_S,t⟩ + ⟨⟦q⟧,t⊗t⟩.
    pub fn zeta(&self, i: usize, s: f64) -> Result<(f64, f64)> {
        let b = self.bundle;
        let iface = &b.interfaces[i];
        let (t, nu, k) = (iface.tangent(s), iface.normal(s), iface.curvature(s));
        let jump_alpha_t = |q: f64| -> Result<f64> {
            let p = b.sided_eval(i, q, Side::Plus, |x, pr| self.alpha_jets(x, pr))?;
            let m = b.sided_eval(i, q, Side::Minus, |x, pr| self.alpha_jets(x, pr))?;
            let tq = iface.tangent(q);
            Ok((p[0].value() - m[0].value()) * tq.x + (p[1].value() - m[1].value()) * tq.y)
        };
        let h = 1e-3 * iface.length();
        let d_alpha = fd_derivative(jump_alpha_t, s, 1, h)?;
        let [at_, an] = &self.defects.alpha_line[i];
        let qp = b.sided_eval(i, s, Side::Plus, |x, p| self.defects.metric_anomaly.jet_at(x, p))?;
        let qm = b.sided_eval(i, s, Side::Minus, |x, p| self.defects.metric_anomaly.jet_at(x, p))?;
        let jq = qp.value() - qm.value();
        let (gp, gm) = (qp.grad(), qm.grad());
        let jgq = [gp[0] - gm[0], gp[1] - gm[1]];
        let zeta1 = d_alpha + an.at(s) + self.defects.theta_line[i].at(s) + contract_r(&jgq, t, nu) + k * form(&jq, nu, nu);
        let zeta2 = at_.at(s) + form(&jq, t, t);
        Ok((zeta1, zeta2))
    }

    pub fn point(&self) -> f64 {
        self.defects.point
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{InterfaceSpec, Material, Poly2};

    fn flat() -> FieldBundle {
        FieldBundle::new(Material::new(1.0, 1.0, 0.3).unwrap(), ScalarField::Zero)
    }

    #[test]
    fn zero_fields_zero_strains() {
        let b = flat();
        let st = strains_from_displacement(&b);
        let x = Vec2::new(0.2, 0.1);
        assert_eq!(st.e(x).norm(), 0.0);
        assert_eq!(st.lambda(x).norm(), 0.0);
    }

    #[test]
    fn smooth_fields_are_compatible() {
        let mut b = FieldBundle::new(
            Material::new(1.0, 1.0, 0.3).unwrap(),
            ScalarField::Polynomial(Poly2::new(vec![(2, 0, 0.3), (1, 2, -0.2), (3, 1, 0.1)])),
        );
        b.u = Some([Poly2::new(vec![(2, 1, 0.4), (0, 3, 0.1)]), Poly2::new(vec![(1, 1, -0.3), (3, 0, 0.2)])]);
        let probes = ProbeSet::generate(&b, 50, 0, 1);
        let st = strains_from_displacement(&b);
        let r = bending_compat_residuals(&st, &probes).unwrap();
        assert!(r.get("bend.bulk.curl").unwrap().max_relative < 1e-12);
        let r = stretching_compat_residuals(&st, &probes).unwrap();
        assert!(r.get("stretch.bulk").unwrap().max_relative < 1e-10, "{r:?}");
    }

    #[test]
    fn defect_examples() {
        let mut b = flat();
        b.interfaces.push(InterfaceSpec::segment("S", Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 0.0));
        let mut d = DefectSpec::none(1);
        d.theta_bulk = ScalarField::Polynomial(Poly2::new(vec![(0, 0, 0.7)]));
        let inc = defect_to_incompatibility(&d, &b);
        assert!((inc.eta(Vec2::new(0.3, 0.4)).unwrap() - 0.7).abs() < 1e-15);
        assert_eq!(inc.zeta(0, 0.5).unwrap(), (0.0, 0.0));
        let mut d = DefectSpec::none(1);
        d.alpha_line[0] = [LineDensity::constant(0.25), LineDensity::default()];
        let inc = defect_to_incompatibility(&d, &b);
        let (z1, z2) = inc.zeta(0, 0.7).unwrap();
        assert!(z1.abs() < 1e-15 && (z2 - 0.25).abs() < 1e-15);
        let none = DefectSpec::none(1);
        let inc = defect_to_incompatibility(&none, &b);
        assert_eq!(inc.eta(Vec2::new(0.3, 0.4)).unwrap(), 0.0);
        assert_eq!(inc.zeta(0, 1.1).unwrap(), (0.0, 0.0));
    }
}
