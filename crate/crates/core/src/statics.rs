//! Constitutive relations and local equilibrium residuals.

use crate::distcalc::{loop_integral_curl_rows, point_loads};
use crate::error::Result;
use crate::fields::{average, jump, FieldBundle, Material, Quantity, Side, TensorJet};
use crate::kinematics::{apply_a_jet, loop_moment_scale, strains_from_displacement, LineDensity};
use crate::numerics::fd_derivative;
use crate::residual::{relative, Accumulator, ProbeSet, Region, ResidualSet};
use crate::tensor::{apply_a, div3, form, inner, outer, Mat2, Vec2};

/// σ = 𝔸∇∇φ at a bulk point.
pub fn stress_from_airy(bundle: &FieldBundle, x: Vec2) -> Result<Mat2> {
    Ok(bundle.sample(Quantity::Stress, x)?.tensor())
}

/// Isotropic plate laws: σ = E/(1−ν²)((1−ν)eᵉ + ν tr eᵉ I), m = D((1−ν)λᵉ + ν tr λᵉ I).
pub fn constitutive(material: &Material, e_elastic: &Mat2, lambda_elastic: &Mat2) -> (Mat2, Mat2) {
    let nu = material.nu;
    let iso = |a: &Mat2| a * (1.0 - nu) + Mat2::identity() * (nu * a.trace());
    (iso(e_elastic) * (material.e / (1.0 - nu * nu)), iso(lambda_elastic) * material.d)
}

/// Line concentration given by its (t⊗t, sym t⊗ν, ν⊗ν) components along each interface.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FrameDensity(pub [LineDensity; 3]);

impl FrameDensity {
    pub fn at(&self, t: Vec2, nu: Vec2, s: f64) -> Mat2 {
        let [tt, tn, nn] = &self.0;
        outer(t, t) * tt.at(s) + (outer(t, nu) + outer(nu, t)) * tn.at(s) + outer(nu, nu) * nn.at(s)
    }
}

/// Bulk σ and m of a bundle, with optional stress and moment concentrations τ, n on S.
#[derive(Clone, Debug)]
pub struct StressState<'a> {
    pub bundle: &'a FieldBundle,
    pub tau: Vec<FrameDensity>,
    pub n: Vec<FrameDensity>,
}

impl<'a> StressState<'a> {
    /// τ = n = 0.
    pub fn from_bundle(bundle: &'a FieldBundle) -> Self {
        let k = bundle.interfaces.len();
        StressState { bundle, tau: vec![FrameDensity::default(); k], n: vec![FrameDensity::default(); k] }
    }

    pub fn sigma(&self, x: Vec2) -> Mat2 {
        apply_a(&self.bundle.phi_jet(x, x).hess())
    }

    pub fn moment(&self, x: Vec2) -> Mat2 {
        self.bundle.moment_jet(x, x).value()
    }

    pub fn tau_at(&self, i: usize, s: f64) -> Mat2 {
        let f = &self.bundle.interfaces[i];
        self.tau[i].at(f.tangent(s), f.normal(s), s)
    }

    pub fn n_at(&self, i: usize, s: f64) -> Mat2 {
        let f = &self.bundle.interfaces[i];
        self.n[i].at(f.tangent(s), f.normal(s), s)
    }
}

pub(crate) fn stress_jet(bundle: &FieldBundle, x: Vec2, probe: Vec2) -> TensorJet {
    let p = bundle.phi_jet(x, probe);
    let (p1, p2) = (p.diff(0), p.diff(1));
    apply_a_jet(&TensorJet([p1.diff(0), p1.diff(1), p2.diff(1)]))
}

/// d/ds of a matrix-valued function of arclength, entrywise.
pub(crate) fn d_ds(f: &dyn Fn(f64) -> Result<Mat2>, s: f64, order: usize, h: f64) -> Result<Mat2> {
    let mut out = Mat2::zeros();
    for r in 0..2 {
        for c in 0..2 {
            out[(r, c)] = fd_derivative(|q| Ok(f(q)?[(r, c)]), s, order, h)?;
        }
    }
    Ok(out)
}

fn vec_push(acc: &mut Accumulator, raw: Vec2, terms: &[f64], at: &[f64]) {
    acc.push(raw.norm(), relative(raw.norm(), terms), at);
}

/// (e₁-row, e₂-row) rotation R with R e_θ = e_r, so that a R e_θ = a e_r.
fn to_radial() -> Mat2 {
    Mat2::new(0.0, 1.0, -1.0, 0.0)
}

/// In-plane force balance: div σ = 0 in the bulk; (dτ/ds)t − ⟦σ⟧ν = 0 and τν = 0
/// on S; no net force through loops around O.
pub fn inplane_balance_residuals(state: &StressState, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = state.bundle;
    let mut out = ResidualSet::default();
    let mut bulk = Accumulator::new("inplane.bulk.div", Region::Bulk);
    for &x in &probes.bulk {
        let g = stress_jet(b, x, x).grad();
        let terms = [g[0][(0, 0)], g[1][(0, 1)], g[0][(1, 0)], g[1][(1, 1)]];
        vec_push(&mut bulk, div3(&g), &terms, &[x.x, x.y]);
    }
    out.push(bulk.finish());

    let mut jmp = Accumulator::new("inplane.iface.jump", Region::Interface);
    let mut tn = Accumulator::new("inplane.iface.tau_nu", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu) = (iface.tangent(s), iface.normal(s));
        let sp = b.one_sided(Quantity::Stress, i, s, Side::Plus)?.tensor();
        let sm = b.one_sided(Quantity::Stress, i, s, Side::Minus)?.tensor();
        let js = (sp - sm) * nu;
        let h = 1e-3 * iface.length();
        let dtau = d_ds(&|q| Ok(state.tau_at(i, q)), s, 1, h)? * t;
        let raw = dtau - js;
        vec_push(&mut jmp, raw, &[dtau.norm(), js.norm(), (sp * nu).norm(), (sm * nu).norm()], &[i as f64, s]);
        let tau = state.tau_at(i, s);
        let r = tau * nu;
        vec_push(&mut tn, r, &[tau.norm()], &[i as f64, s]);
    }
    out.push(jmp.finish());
    out.push(tn.finish());

    if let Some(o) = b.origin {
        let mut lp = Accumulator::new("inplane.point.loop", Region::Point);
        let r = to_radial();
        for &eps in &probes.loop_radii {
            let v = loop_integral_curl_rows(b, o, eps, &|x| state.sigma(x) * r, &|i, s| state.tau_at(i, s) * r)?;
            let scale = loop_scale(o, eps, &|x| state.sigma(x).norm());
            lp.push(v.norm(), relative(v.norm(), &[scale]), &[eps, v.x, v.y]);
        }
        out.push(lp.finish());
    }
    Ok(out)
}

fn loop_scale(o: Vec2, eps: f64, f: &dyn Fn(Vec2) -> f64) -> f64 {
    let n = 64;
    let h = 2.0 * std::f64::consts::PI / n as f64;
    (0..n)
        .map(|k| {
            let th = -std::f64::consts::PI + (k as f64 + 0.5) * h;
            f(o + Vec2::new(th.cos(), th.sin()) * eps)
        })
        .filter(|v| v.is_finite())
        .sum::<f64>()
        * h
        * eps
}

/// a = m + sym((e₃×∇φ)⊗(e₃×∇w)) and div a, the source of the transverse point loads.
pub fn moment_loop_source(bundle: &FieldBundle, x: Vec2, probe: Vec2) -> (Mat2, Vec2) {
    let p = bundle.phi_jet(x, probe);
    let w = bundle.w_jet(x, probe);
    let rp = [p.diff(1) * -1.0, p.diff(0)];
    let rw = [w.diff(1) * -1.0, w.diff(0)];
    let a = bundle.moment_jet(x, probe).add(&TensorJet::dyad(rp, rw));
    (a.value(), div3(&a.grad()))
}

fn bulk_moment_terms(m: &TensorJet, sigma: &Mat2, lambda: &Mat2) -> [f64; 6] {
    let [a, b, c] = &m.0;
    let sl = sigma.component_mul(lambda);
    [a.partial(2, 0), 2.0 * b.partial(1, 1), c.partial(0, 2), sl[(0, 0)], 2.0 * sl[(0, 1)], sl[(1, 1)]]
}

/// Transverse moment balance: div div m − ⟨σ,λ⟩ = f₁ in the bulk; the interfacial
/// force equation (= f₂), the couple equation (= line couple), ⟨n,ν⊗ν⟩ = 0; the
/// point loads of the moment loop against the declared f₀ and f⃗₁.
pub fn moment_balance_residuals(state: &StressState, probes: &ProbeSet) -> Result<ResidualSet> {
    let b = state.bundle;
    let strains = strains_from_displacement(b);
    let mut out = ResidualSet::default();
    let mut bulk = Accumulator::new("moment.bulk", Region::Bulk);
    for &x in &probes.bulk {
        let m = b.moment_jet(x, x);
        let sigma = state.sigma(x);
        let lambda = strains.lambda(x);
        let lhs = m.div_div() - inner(&sigma, &lambda);
        let raw = lhs - b.bulk_force;
        let mut terms = bulk_moment_terms(&m, &sigma, &lambda).to_vec();
        terms.push(b.bulk_force);
        bulk.push(raw, relative(raw, &terms), &[x.x, x.y]);
    }
    out.push(bulk.finish());

    let mut force = Accumulator::new("moment.iface.force", Region::Interface);
    let mut couple = Accumulator::new("moment.iface.couple", Region::Interface);
    let mut n_nu = Accumulator::new("moment.iface.n_nu", Region::Interface);
    for &(i, s) in &probes.interface {
        let iface = &b.interfaces[i];
        let (t, nu, k) = (iface.tangent(s), iface.normal(s), iface.curvature(s));
        let h = 1e-3 * iface.length();
        let dmp = b.one_sided(Quantity::DivMoment, i, s, Side::Plus)?.vector();
        let dmm = b.one_sided(Quantity::DivMoment, i, s, Side::Minus)?.vector();
        let jm_at = |q: f64| -> Result<Mat2> { Ok(jump(b, Quantity::Moment, i, q)?.tensor()) };
        let jm = jm_at(s)?;
        let djm = d_ds(&jm_at, s, 1, h)?;
        let n = state.n_at(i, s);
        let dn = d_ds(&|q| Ok(state.n_at(i, q)), s, 1, h)?;
        let ddn = d_ds(&|q| Ok(state.n_at(i, q)), s, 2, h)?;
        let sig_avg = average(b, Quantity::Stress, i, s)?.tensor();
        let lam_avg = average(b, Quantity::HessW, i, s)?.tensor();
        let gamma = strains.gamma(i, s)?;
        let tau = state.tau_at(i, s);
        let lhs = [
            (dmp - dmm).dot(&nu),
            form(&djm, t, nu),
            -form(&ddn, t, t),
            -k * k * form(&n, t, t),
            -k * form(&jm, t, t),
            // vanishes when no line couple is applied
            k * form(&jm, nu, nu),
            form(&sig_avg, nu, nu) * form(&gamma, nu, nu),
            form(&lam_avg, t, t) * form(&tau, t, t),
        ];
        let raw = lhs.iter().sum::<f64>() - iface.line_force;
        let mut terms = lhs.to_vec();
        terms.extend([dmp.dot(&nu), dmm.dot(&nu), iface.line_force]);
        force.push(raw, relative(raw, &terms), &[i as f64, s]);

        let mp = b.one_sided(Quantity::Moment, i, s, Side::Plus)?.tensor();
        let mm = b.one_sided(Quantity::Moment, i, s, Side::Minus)?.tensor();
        let c = [form(&jm, nu, nu), -form(&dn, t, nu), k * form(&n, t, t)];
        let raw = c.iter().sum::<f64>() - iface.line_couple;
        let mut terms = c.to_vec();
        terms.extend([form(&mp, nu, nu), form(&mm, nu, nu), iface.line_couple]);
        couple.push(raw, relative(raw, &terms), &[i as f64, s]);

        let nn = form(&n, nu, nu);
        n_nu.push(nn, relative(nn, &[n.norm()]), &[i as f64, s]);
    }
    out.push(force.finish());
    out.push(couple.finish());
    out.push(n_nu.finish());

    if let Some(o) = b.origin {
        let mut lp = Accumulator::new("moment.point.loop", Region::Point);
        let src = |x: Vec2, p: Vec2| moment_loop_source(b, x, p);
        for &eps in &probes.loop_radii {
            let loads = point_loads(b, o, eps, &src)?;
            let raw = (loads.f0 - b.point_force).abs().max((loads.f1 - b.point_dipole).norm());
            let scale = loop_moment_scale(o, eps, &src).max(b.point_force.abs()).max(b.point_dipole.norm());
            lp.push(raw, relative(raw, &[scale]), &[eps, loads.f0, loads.f1.x, loads.f1.y]);
        }
        out.push(lp.finish());
    }
    Ok(out)
}
