//! Residuals of the generalized von Kármán equations (Cases 1 and 2) and of the
//! specialized fold system, in the bulk, on S, and at O.

use crate::distcalc::{dirac_components, integrate_support, point_loads, strong_pair_curlcurl, DiracComponents, QuadOptions};
use crate::error::Result;
use crate::fields::{average, jump, FieldBundle, Quantity, Side, TensorJet};
use crate::kinematics::{loop_moment_scale, Incompatibility};
use crate::numerics::fd_derivative;
use crate::residual::{relative, Accumulator, ProbeSet, Region, ResidualSet};
use crate::statics::{d_ds, moment_loop_source, stress_jet};
use crate::tensor::{apply_a, contract_r, div3, form, inner, outer, s_tensor, Grad3, Mat2, Vec2};

/// Point part at O of Curl Curl A + c_φ Δ²Φ, where A has the piecewise bulk
/// density `a`: the difference of weak and strong pairings with a bump at O and
/// its first moments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointContent {
    pub components: DiracComponents,
    /// largest ∫|weak integrand| over the three pairings
    pub magnitude: f64,
}

pub fn curlcurl_point_content(
    bundle: &FieldBundle,
    a: &dyn Fn(Vec2, Vec2) -> TensorJet,
    phi_coefficient: f64,
    center: Vec2,
    radius: f64,
    opts: &QuadOptions,
) -> Result<PointContent> {
    let combined = |x: Vec2, p: Vec2| {
        let j = a(x, p);
        if phi_coefficient == 0.0 {
            j
        } else {
            j.add(&stress_jet(bundle, x, p).scale(phi_coefficient))
        }
    };
    let magnitude = std::cell::Cell::new(0.0f64);
    let pairing = |psi: &crate::numerics::TestFunction| -> Result<f64> {
        let f = |x: Vec2| {
            if !psi.contains(x) {
                return 0.0;
            }
            let mut v = inner(&a(x, x).value(), &apply_a(&psi.hess(x)));
            if phi_coefficient != 0.0 {
                v += phi_coefficient * bundle.phi_jet(x, x).value() * psi.jet(x).bilaplacian();
            }
            v
        };
        let weak = integrate_support(bundle, psi, &f, opts)?;
        // the strong side only needs to resolve what the weak side can
        let floor = QuadOptions { atol: opts.rtol * weak.magnitude, ..*opts };
        let strong = strong_pair_curlcurl(bundle, &combined, psi, 0.0, &floor)?;
        magnitude.set(magnitude.get().max(weak.magnitude));
        Ok(weak.value - strong.value)
    };
    let components = dirac_components(&pairing, center, radius)?;
    Ok(PointContent { components, magnitude: magnitude.get() })
}

fn point_opts() -> QuadOptions {
    QuadOptions { rtol: 1e-5, ..Default::default() }
}

fn station(i: usize, s: f64) -> [f64; 2] {
    [i as f64, s]
}

fn third_jump(b: &FieldBundle, q: Quantity, i: usize, s: f64) -> Result<Grad3> {
    Ok(jump(b, q, i, s)?.third())
}

/// 1/E, or 0 when elastic inextensibility removes the stress-function terms.
fn compliance(b: &FieldBundle) -> f64 {
    if b.inextensible {
        0.0
    } else {
        1.0 / b.material.e
    }
}

/// ½[w,w] = det ∇∇w with its two products as terms.
fn half_bracket(h: &Mat2) -> (f64, [f64; 2]) {
    let p = h[(0, 0)] * h[(1, 1)];
    let q = h[(0, 1)] * h[(0, 1)];
    (p - q, [p, q])
}

/// Interfacial monopole of ½[W,W], −⟨{∇∇w},t⊗t⟩⟨⟦∇w⟧,ν⟩, and the fold closure
/// misfit ⟦∇w⟧⊗ν + γ^p, and |{∇∇w}||⟦∇w⟧| as the monopole's scale.
fn kink_terms(b: &FieldBundle, i: usize, s: f64) -> Result<(f64, Mat2, Mat2, f64)> {
    let iface = &b.interfaces[i];
    let (t, nu) = (iface.tangent(s), iface.normal(s));
    let jg = jump(b, Quantity::GradW, i, s)?.vector();
    let havg = average(b, Quantity::HessW, i, s)?.tensor();
    let gp = outer(nu, nu) * iface.gamma0;
    Ok((-form(&havg, t, t) * jg.dot(&nu), outer(jg, nu) + gp, gp, havg.norm() * jg.norm()))
}

/// Largest one-sided |e^p| at a station, the scale of the t⊗t jump equations.
fn plastic_stretch_scale(b: &FieldBundle, i: usize, s: f64) -> Result<f64> {
    let p = b.one_sided(Quantity::PlasticStretch, i, s, Side::Plus)?.tensor();
    let m = b.one_sided(Quantity::PlasticStretch, i, s, Side::Minus)?.tensor();
    Ok(p.norm().max(m.norm()))
}

/// Case 1 (e^p and λ^p prescribed): the fold closure −⟦∇w⟧⊗ν = γ^p; bulk
/// (1/E)Δ²φ + ½[w,w] = −curl curl e^p; the two interfacial equations; and the
/// point content of (1/E)Δ²Φ + ½[W,W] + Curl Curl E^p at O.
pub fn vk1_case1_residuals(bundle: &FieldBundle, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = bundle;
    let ce = compliance(b);
    let mut out = ResidualSet::default();

    let mut closure = Accumulator::new("vk1.iface.fold_closure", Region::Interface);
    for &(i, s) in &probes.interface {
        let (_, misfit, gp, _) = kink_terms(b, i, s)?;
        let jg = jump(b, Quantity::GradW, i, s)?.vector();
        closure.push(misfit.norm(), relative(misfit.norm(), &[gp.norm(), jg.norm()]), &station(i, s));
    }
    out.push(closure.finish());

    let mut bulk = Accumulator::new("vk1.bulk", Region::Bulk);
    for &x in &probes.bulk {
        let phi = b.phi_jet(x, x);
        let bil = if ce != 0.0 { ce * phi.bilaplacian() } else { 0.0 };
        let (hb, parts) = half_bracket(&b.w_jet(x, x).hess());
        let cc = b.plastic_stretch.jet_at(x, x).curl_curl();
        let raw = bil + hb + cc;
        bulk.push(raw, relative(raw, &[bil, parts[0], parts[1], cc]), &[x.x, x.y]);
    }
    out.push(bulk.finish());

    let mut mono = Accumulator::new("vk1.iface.monopole", Region::Interface);
    let mut tt = Accumulator::new("vk1.iface.tt", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu, k) = (iface.tangent(s), iface.normal(s), iface.curvature(s));
        let h = 1e-3 * iface.length();
        let (kink, _, _, kscale) = kink_terms(b, i, s)?;
        let jgep = third_jump(b, Quantity::GradPlasticStretch, i, s)?;
        let jep = jump(b, Quantity::PlasticStretch, i, s)?.tensor();
        let (phi_a, phi_b, phi_nn) = if ce != 0.0 {
            let jd = jump(b, Quantity::DivHessPhi, i, s)?.vector().dot(&nu);
            let dj = d_ds(&|q| Ok(jump(b, Quantity::HessPhi, i, q)?.tensor()), s, 1, h)?;
            let jh = jump(b, Quantity::HessPhi, i, s)?.tensor();
            (ce * jd, ce * form(&dj, t, nu), ce * form(&jh, nu, nu))
        } else {
            (0.0, 0.0, 0.0)
        };
        let lhs = [phi_a, phi_b, kink];
        let rhs = [-contract_r(&jgep, t, nu), -k * form(&jep, nu, nu)];
        let raw = lhs.iter().sum::<f64>() - rhs.iter().sum::<f64>();
        let mut terms = lhs.to_vec();
        terms.extend(rhs);
        terms.push(kscale);
        mono.push(raw, relative(raw, &terms), &station(i, s));

        let ep_tt = form(&jep, t, t);
        let raw = phi_nn + ep_tt;
        tt.push(raw, relative(raw, &[phi_nn, ep_tt, plastic_stretch_scale(b, i, s)?]), &station(i, s));
    }
    out.push(mono.finish());
    out.push(tt.finish());

    if let Some(o) = b.origin {
        let a = |x: Vec2, p: Vec2| b.plastic_stretch.jet_at(x, p).add(&b.grad_w_sq_jet(x, p).scale(-0.5));
        let pc = curlcurl_point_content(b, &a, ce, o, 0.5 * b.scale, &point_opts())?;
        out.push(point_record("vk1.point", &pc, 0.0));
    }
    Ok(out)
}

fn point_record(name: &str, pc: &PointContent, expected_dirac: f64) -> crate::residual::ResidualRecord {
    let c = &pc.components;
    let raw = (c.dirac - expected_dirac).abs().max(c.dipole.norm());
    let mut acc = Accumulator::new(name, Region::Point);
    acc.push(raw, relative(raw, &[pc.magnitude]), &[c.dirac, c.dipole.x, c.dipole.y]);
    acc.finish()
}

/// Second equation, strong forms: bulk DΔ²w − [φ,w] = f₁ + D((1−ν)div div λ^p + νΔ tr λ^p);
/// the interfacial force equation (= f₂ + plastic terms); the couple equation
/// D((1−ν)k⟨⟦∇w⟧,ν⟩ + ⟦Δw⟧ − (1−ν)⟨⟦λ^p⟧,ν⊗ν⟩ − ν⟦tr λ^p⟧) = line couple; the moment
/// loop at O against the declared f₀, f⃗₁.
pub fn vk2_residuals(bundle: &FieldBundle, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = bundle;
    let (d, nu_p) = (b.material.d, b.material.nu);
    let mut out = ResidualSet::default();

    let mut bulk = Accumulator::new("vk2.bulk", Region::Bulk);
    for &x in &probes.bulk {
        let w = b.w_jet(x, x);
        let sigma = apply_a(&b.phi_jet(x, x).hess());
        let sl = sigma.component_mul(&w.hess());
        let lp = b.plastic_bend.jet_at(x, x);
        let plastic = d * ((1.0 - nu_p) * lp.div_div() + nu_p * lp.laplacian_trace());
        let lhs = d * w.bilaplacian() - sl.sum();
        let raw = lhs - b.bulk_force - plastic;
        let terms = [
            d * w.partial(4, 0),
            2.0 * d * w.partial(2, 2),
            d * w.partial(0, 4),
            sl[(0, 0)],
            2.0 * sl[(0, 1)],
            sl[(1, 1)],
            b.bulk_force,
            plastic,
        ];
        bulk.push(raw, relative(raw, &terms), &[x.x, x.y]);
    }
    out.push(bulk.finish());

    let mut force = Accumulator::new("vk2.iface.force", Region::Interface);
    let mut couple = Accumulator::new("vk2.iface.couple", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu, k) = (iface.tangent(s), iface.normal(s), iface.curvature(s));
        let h = 1e-3 * iface.length();
        let kink_n = |q: f64| -> Result<f64> { Ok(jump(b, Quantity::GradW, i, q)?.vector().dot(&iface.normal(q))) };
        let a = kink_n(s)?;
        let a_ss = fd_derivative(kink_n, s, 2, h)?;
        let jd = jump(b, Quantity::DivHessW, i, s)?.vector().dot(&nu);
        let phi_tt = form(&average(b, Quantity::HessPhi, i, s)?.tensor(), t, t);
        let jlp = jump(b, Quantity::PlasticBend, i, s)?.tensor();
        let jglp = third_jump(b, Quantity::GradPlasticBend, i, s)?;
        let djlp = d_ds(&|q| Ok(jump(b, Quantity::PlasticBend, i, q)?.tensor()), s, 1, h)?;
        let grad_tr = Vec2::new(jglp[0].trace(), jglp[1].trace());
        let lhs = [d * (1.0 - nu_p) * a_ss, d * jd, -phi_tt * a];
        let rhs = [
            iface.line_force,
            d * (1.0 - nu_p) * div3(&jglp).dot(&nu),
            d * (1.0 - nu_p) * form(&djlp, t, nu),
            d * (1.0 - nu_p) * k * inner(&jlp, &s_tensor(t, nu)),
            d * nu_p * grad_tr.dot(&nu),
        ];
        let raw = lhs.iter().sum::<f64>() - rhs.iter().sum::<f64>();
        let dp = b.one_sided(Quantity::DivHessW, i, s, Side::Plus)?.vector().dot(&nu);
        let dm = b.one_sided(Quantity::DivHessW, i, s, Side::Minus)?.vector().dot(&nu);
        let mut terms = lhs.to_vec();
        terms.extend(rhs);
        terms.extend([d * dp, d * dm]);
        force.push(raw, relative(raw, &terms), &station(i, s));

        let jlap = jump(b, Quantity::LapW, i, s)?.scalar();
        let lp_p = b.one_sided(Quantity::LapW, i, s, Side::Plus)?.scalar();
        let lp_m = b.one_sided(Quantity::LapW, i, s, Side::Minus)?.scalar();
        let c = [d * (1.0 - nu_p) * k * a, d * jlap, -d * (1.0 - nu_p) * form(&jlp, nu, nu), -d * nu_p * jlp.trace()];
        let raw = c.iter().sum::<f64>() - iface.line_couple;
        let mut terms = c.to_vec();
        terms.extend([d * lp_p, d * lp_m, iface.line_couple]);
        couple.push(raw, relative(raw, &terms), &station(i, s));
    }
    out.push(force.finish());
    out.push(couple.finish());

    if let Some(o) = b.origin {
        out.push(moment_loop_record("vk2.point.loop", b, o, probes)?);
    }
    Ok(out)
}

/// Point loads of the moment loop at each radius; `worst` holds (ε, f₀, f⃗₁) of
/// the worst radius.
fn moment_loop_record(name: &str, b: &FieldBundle, o: Vec2, probes: &ProbeSet) -> Result<crate::residual::ResidualRecord> {
    let mut lp = Accumulator::new(name, Region::Point);
    let src = |x: Vec2, p: Vec2| moment_loop_source(b, x, p);
    for &eps in &probes.loop_radii {
        let loads = point_loads(b, o, eps, &src)?;
        let df0 = loads.f0 - b.point_force;
        let df1 = loads.f1 - b.point_dipole;
        let raw = df0.abs().max(df1.norm());
        let scale = loop_moment_scale(o, eps, &src).max(b.point_force.abs()).max(b.point_dipole.norm());
        lp.push(raw, relative(raw, &[scale]), &[eps, df0, df1.x, df1.y]);
    }
    Ok(lp.finish())
}

/// Case 2 (N₁ and λ^p prescribed): bulk (1/E)Δ²φ + ½[w,w] = −η + det λ^p;
/// (1/E)(⟨⟦div∇∇φ⟧,ν⟩ + ⟨d⟦∇∇φ⟧/ds,t⊗ν⟩) + ⟨{∇∇w},t⊗t⟩⟨⟦∇w⟧,ν⟩ = −ζ₁ (the kink
/// term vanishes for continuous ∇w); (1/E)⟨⟦∇∇φ⟧,ν⊗ν⟩ = −ζ₂; the point content of
/// (1/E)Δ²Φ + ½[W,W] + N₁ at O against `det_plastic_point`, the point part of
/// Det Λ^p (nonzero when plastic folds meet at O).
pub fn vk1_case2_residuals(bundle: &FieldBundle, inc: &Incompatibility, det_plastic_point: f64, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = bundle;
    let ce = compliance(b);
    let mut out = ResidualSet::default();

    let mut bulk = Accumulator::new("vk1c2.bulk", Region::Bulk);
    for &x in &probes.bulk {
        let bil = if ce != 0.0 { ce * b.phi_jet(x, x).bilaplacian() } else { 0.0 };
        let (hb, parts) = half_bracket(&b.w_jet(x, x).hess());
        let eta = inc.eta(x)?;
        let lp = b.plastic_bend.jet_at(x, x).value();
        let (dl, dparts) = half_bracket(&lp);
        let raw = bil + hb + eta - dl;
        bulk.push(raw, relative(raw, &[bil, parts[0], parts[1], eta, dparts[0], dparts[1]]), &[x.x, x.y]);
    }
    out.push(bulk.finish());

    let mut z1 = Accumulator::new("vk1c2.iface.zeta1", Region::Interface);
    let mut z2 = Accumulator::new("vk1c2.iface.zeta2", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu) = (iface.tangent(s), iface.normal(s));
        let h = 1e-3 * iface.length();
        let (kink, _, _, kscale) = kink_terms(b, i, s)?;
        let (zeta1, zeta2) = inc.zeta(i, s)?;
        let (pa, pb, pn) = if ce != 0.0 {
            let jd = jump(b, Quantity::DivHessPhi, i, s)?.vector().dot(&nu);
            let dj = d_ds(&|q| Ok(jump(b, Quantity::HessPhi, i, q)?.tensor()), s, 1, h)?;
            let jh = jump(b, Quantity::HessPhi, i, s)?.tensor();
            (ce * jd, ce * form(&dj, t, nu), ce * form(&jh, nu, nu))
        } else {
            (0.0, 0.0, 0.0)
        };
        let raw = pa + pb + kink + zeta1;
        z1.push(raw, relative(raw, &[pa, pb, kink, zeta1, kscale]), &station(i, s));
        let raw = pn + zeta2;
        z2.push(raw, relative(raw, &[pn, zeta2]), &station(i, s));
    }
    out.push(z1.finish());
    out.push(z2.finish());

    if let Some(o) = b.origin {
        let a = |x: Vec2, p: Vec2| b.grad_w_sq_jet(x, p).scale(-0.5);
        let pc = curlcurl_point_content(b, &a, ce, o, 0.5 * b.scale, &point_opts())?;
        out.push(point_record("vk1c2.point", &pc, det_plastic_point - inc.point()));
    }
    Ok(out)
}

/// Inextensible fold system: ½[w,w] = −curl curl e^p and DΔ²w − [φ,w] = f₁ in the
/// bulk; γ₀⟨{∇∇w},t⊗t⟩ + ⟨⟦∇e^p⟧,r⟩ + k⟨⟦e^p⟧,ν⊗ν⟩ = 0 and ⟨⟦e^p⟧,t⊗t⟩ = 0;
/// −D(1−ν)γ₀″ + D⟨⟦div∇∇w⟧,ν⟩ + γ₀⟨∇∇φ,t⊗t⟩ = f₂; D(⟦Δw⟧ − (1−ν)kγ₀) = line couple.
pub fn fold_vk_residuals(bundle: &FieldBundle, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = bundle;
    let (d, nu_p) = (b.material.d, b.material.nu);
    let mut out = ResidualSet::default();

    let mut closure = Accumulator::new("fold.iface.closure", Region::Interface);
    for &(i, s) in &probes.interface {
        let (_, misfit, gp, _) = kink_terms(b, i, s)?;
        let jg = jump(b, Quantity::GradW, i, s)?.vector();
        closure.push(misfit.norm(), relative(misfit.norm(), &[gp.norm(), jg.norm()]), &station(i, s));
    }
    out.push(closure.finish());

    let mut compat = Accumulator::new("fold.bulk.compat", Region::Bulk);
    let mut equil = Accumulator::new("fold.bulk.equil", Region::Bulk);
    for &x in &probes.bulk {
        let w = b.w_jet(x, x);
        let (hb, parts) = half_bracket(&w.hess());
        let cc = b.plastic_stretch.jet_at(x, x).curl_curl();
        let raw = hb + cc;
        compat.push(raw, relative(raw, &[parts[0], parts[1], cc]), &[x.x, x.y]);
        let sl = apply_a(&b.phi_jet(x, x).hess()).component_mul(&w.hess());
        let raw = d * w.bilaplacian() - sl.sum() - b.bulk_force;
        let terms = [
            d * w.partial(4, 0),
            2.0 * d * w.partial(2, 2),
            d * w.partial(0, 4),
            sl[(0, 0)],
            2.0 * sl[(0, 1)],
            sl[(1, 1)],
            b.bulk_force,
        ];
        equil.push(raw, relative(raw, &terms), &[x.x, x.y]);
    }
    out.push(compat.finish());
    out.push(equil.finish());

    let mut ic = Accumulator::new("fold.iface.compat", Region::Interface);
    let mut itt = Accumulator::new("fold.iface.compat_tt", Region::Interface);
    let mut force = Accumulator::new("fold.iface.force", Region::Interface);
    let mut couple = Accumulator::new("fold.iface.couple", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu, k, g0) = (iface.tangent(s), iface.normal(s), iface.curvature(s), iface.gamma0);
        let havg = average(b, Quantity::HessW, i, s)?.tensor();
        let jgep = third_jump(b, Quantity::GradPlasticStretch, i, s)?;
        let jep = jump(b, Quantity::PlasticStretch, i, s)?.tensor();
        let l = g0 * form(&havg, t, t);
        let r = [contract_r(&jgep, t, nu), k * form(&jep, nu, nu)];
        let raw = l + r[0] + r[1];
        ic.push(raw, relative(raw, &[l, r[0], r[1], g0 * havg.norm()]), &station(i, s));
        let ett = form(&jep, t, t);
        itt.push(ett, relative(ett, &[plastic_stretch_scale(b, i, s)?]), &station(i, s));

        // γ₀ is constant along each interface
        let jd = jump(b, Quantity::DivHessW, i, s)?.vector().dot(&nu);
        let phi_tt = form(&average(b, Quantity::HessPhi, i, s)?.tensor(), t, t);
        let lhs = [d * jd, g0 * phi_tt];
        let raw = lhs[0] + lhs[1] - iface.line_force;
        let dp = b.one_sided(Quantity::DivHessW, i, s, Side::Plus)?.vector().dot(&nu);
        let dm = b.one_sided(Quantity::DivHessW, i, s, Side::Minus)?.vector().dot(&nu);
        force.push(raw, relative(raw, &[lhs[0], lhs[1], d * dp, d * dm, iface.line_force]), &station(i, s));

        let jlap = jump(b, Quantity::LapW, i, s)?.scalar();
        let lp_p = b.one_sided(Quantity::LapW, i, s, Side::Plus)?.scalar();
        let lp_m = b.one_sided(Quantity::LapW, i, s, Side::Minus)?.scalar();
        let c = [d * jlap, -d * (1.0 - nu_p) * k * g0];
        let raw = c[0] + c[1] - iface.line_couple;
        couple.push(raw, relative(raw, &[c[0], c[1], d * lp_p, d * lp_m, iface.line_couple]), &station(i, s));
    }
    out.push(ic.finish());
    out.push(itt.finish());
    out.push(force.finish());
    out.push(couple.finish());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Material, Poly2, ScalarField, TensorField};

    fn mat() -> Material {
        Material::new(2.0, 1.0, 0.3).unwrap()
    }

    #[test]
    fn zero_fields_zero_residuals() {
        let mut b = FieldBundle::new(mat(), ScalarField::Zero);
        b.origin = Some(Vec2::zeros());
        let probes = ProbeSet::generate(&b, 10, 0, 2);
        for set in [vk1_case1_residuals(&b, &probes).unwrap(), vk2_residuals(&b, &probes).unwrap()] {
            for r in set.records {
                assert_eq!(r.max_raw, 0.0, "{}", r.equation);
            }
        }
    }

    #[test]
    fn plastic_determinant_in_case2() {
        let mut b = FieldBundle::new(mat(), ScalarField::Zero);
        b.plastic_bend = TensorField::Constant(Mat2::identity() * 0.3);
        let defects = crate::kinematics::DefectSpec::none(0);
        let inc = crate::kinematics::defect_to_incompatibility(&defects, &b);
        let probes = ProbeSet::generate(&b, 10, 0, 2);
        let r = vk1_case2_residuals(&b, &inc, 0.0, &probes).unwrap();
        assert!((r.get("vk1c2.bulk").unwrap().max_raw - 0.09).abs() < 1e-15);
    }

    #[test]
    fn planted_plastic_stretch_jump() {
        let mut b = FieldBundle::new(mat(), ScalarField::Zero);
        b.interfaces.push(crate::fields::InterfaceSpec::segment("S", Vec2::new(-1.0, 0.0), Vec2::new(1.0, 0.0), 0.0));
        b.plastic_stretch = TensorField::HalfPlane {
            point: Vec2::zeros(),
            normal: Vec2::new(0.0, 1.0),
            positive: Mat2::new(0.25, 0.0, 0.0, 0.0),
            negative: Mat2::zeros(),
        };
        b.phi = ScalarField::Polynomial(Poly2::new(vec![(2, 0, 1.0)]));
        let probes = ProbeSet::generate(&b, 5, 4, 2);
        let r = vk1_case1_residuals(&b, &probes).unwrap();
        assert!((r.get("vk1.iface.tt").unwrap().max_raw - 0.25).abs() < 1e-15);
    }

    #[test]
    fn smooth_solution_of_both_equations() {
        // w = x₁² + x₂² (Δ²w = 0, [w,w]/2 = 4), with e^p making the first equation hold
        let mut b = FieldBundle::new(mat(), ScalarField::Polynomial(Poly2::new(vec![(2, 0, 1.0), (0, 2, 1.0)])));
        b.plastic_stretch = TensorField::Polynomial([Poly2::new(vec![]), Poly2::new(vec![]), Poly2::new(vec![(2, 0, -2.0)])]);
        b.inextensible = true;
        let probes = ProbeSet::generate(&b, 20, 0, 5);
        let r = vk1_case1_residuals(&b, &probes).unwrap();
        assert!(r.get("vk1.bulk").unwrap().max_relative < 1e-14);
        let r = vk2_residuals(&b, &probes).unwrap();
        assert_eq!(r.get("vk2.bulk").unwrap().max_raw, 0.0);
    }
}
