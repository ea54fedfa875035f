//! Distributional calculus as computable quantities: interfacial densities,
//! Dirac strengths, loop integrals, and weak pairings.

pub mod loops;
pub mod quad;
pub mod weak;

pub use loops::{loop_integral_curl, loop_integral_curl_rows, loop_integral_moment, point_loads, PointLoads};
pub use quad::{integrate_interface, integrate_support, QuadOptions, QuadResult};
pub use weak::{dirac_components, strong_pair_curlcurl, weak_pair_curlcurl, DiracComponents};

use crate::error::{Result, VkError};
use crate::fields::{AngularProfile, FieldBundle, ScalarField, Side, TensorJet};
use crate::numerics::{fd_derivative, integrate_periodic, make_bump, Jet, TestFunction};
use crate::tensor::{apply_a, contract_r, form, inner, s_tensor, Grad3, Mat2, Vec2};

/// Densities of a distributional Curl Curl on S: ψ ↦ ∫ (monopole ψ + dipole ∂ψ/∂ν) dl.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterfacialDensities {
    pub dipole: f64,
    pub monopole: f64,
}

/// Densities of a distributional Laplacian on S: ψ ↦ ∫ (monopole ψ + dipole ∂ψ/∂ν + second_moment ∂²ψ/∂ν²) dl.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaplacianDensities {
    pub monopole: f64,
    pub dipole: f64,
    pub second_moment: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Potential {
    W,
    Phi,
}

/// Tensor field given piecewise: jets at x of the piece containing the probe.
pub type TensorSource<'a> = &'a dyn Fn(Vec2, Vec2) -> TensorJet;
/// Scalar field given piecewise, as for `TensorSource`.
pub type ScalarSource<'a> = &'a dyn Fn(Vec2, Vec2) -> Jet;

/// [b₁, b₂] from the two Hessians.
pub fn monge_ampere(h1: &Mat2, h2: &Mat2) -> f64 {
    inner(&apply_a(h1), h2)
}

/// [b₁, b₂](x) for two scalar fields (piece selected at x itself).
pub fn monge_ampere_fields(b1: &ScalarField, b2: &ScalarField, x: Vec2) -> f64 {
    monge_ampere(&b1.jet_at(x, x).hess(), &b2.jet_at(x, x).hess())
}

/// [b₁, b₂](x) for the bundle potentials, with the proximity check.
pub fn monge_ampere_bulk(bundle: &FieldBundle, b1: Potential, b2: Potential, x: Vec2) -> Result<f64> {
    bundle.check_bulk(x)?;
    let pick = |p: Potential| match p {
        Potential::W => &bundle.w,
        Potential::Phi => &bundle.phi,
    };
    Ok(monge_ampere_fields(pick(b1), pick(b2), x))
}

fn sided_tensor(bundle: &FieldBundle, a: TensorSource, i: usize, s: f64) -> Result<(Mat2, Grad3)> {
    let p = bundle.sided_eval(i, s, Side::Plus, |x, pr| a(x, pr))?;
    let m = bundle.sided_eval(i, s, Side::Minus, |x, pr| a(x, pr))?;
    let (gp, gm) = (p.grad(), m.grad());
    Ok((p.value() - m.value(), [gp[0] - gm[0], gp[1] - gm[1]]))
}

/// Curl Curl densities of a piecewise tensor field on interface `i` at s:
/// dipole ⟨⟦a⟧, t⊗t⟩, monopole ⟨⟦∇a⟧, r⟩ + k⟨⟦a⟧, s⟩.
pub fn curlcurl_interfacial(bundle: &FieldBundle, a: TensorSource, i: usize, s: f64) -> Result<InterfacialDensities> {
    let (ja, jg) = sided_tensor(bundle, a, i, s)?;
    let iface = &bundle.interfaces[i];
    let (t, nu, k) = (iface.tangent(s), iface.normal(s), iface.curvature(s));
    Ok(InterfacialDensities {
        dipole: form(&ja, t, t),
        monopole: contract_r(&jg, t, nu) + k * inner(&ja, &s_tensor(t, nu)),
    })
}

/// Monopole density for a = sym(∇a₁⊗∇a₂) with continuous a₁, a₂:
/// ⟨{∇∇a₁}, t⊗t⟩⟨⟦∇a₂⟧, ν⟩ + ⟨{∇∇a₂}, t⊗t⟩⟨⟦∇a₁⟧, ν⟩.
pub fn curlcurl_product_monopole(bundle: &FieldBundle, a1: ScalarSource, a2: ScalarSource, i: usize, s: f64) -> Result<f64> {
    let iface = &bundle.interfaces[i];
    let (t, nu) = (iface.tangent(s), iface.normal(s));
    let side = |f: ScalarSource, sd: Side| bundle.sided_eval(i, s, sd, |x, p| f(x, p));
    let (p1, m1) = (side(a1, Side::Plus)?, side(a1, Side::Minus)?);
    let (p2, m2) = (side(a2, Side::Plus)?, side(a2, Side::Minus)?);
    let avg_tt = |p: &Jet, m: &Jet| 0.5 * (form(&p.hess(), t, t) + form(&m.hess(), t, t));
    let jump_n = |p: &Jet, m: &Jet| (p.grad() - m.grad()).dot(&nu);
    Ok(avg_tt(&p1, &m1) * jump_n(&p2, &m2) + avg_tt(&p2, &m2) * jump_n(&p1, &m1))
}

/// Laplacian densities for A = a₁ (bulk) + a₂ δ_S:
/// monopole −(⟨⟦∇a₁⟧, ν⟩ − a₂″), dipole ⟦a₁⟧ − k a₂, second moment a₂.
pub fn laplacian_interfacial(bundle: &FieldBundle, a1: ScalarSource, a2: &dyn Fn(f64) -> f64, i: usize, s: f64) -> Result<LaplacianDensities> {
    let p = bundle.sided_eval(i, s, Side::Plus, |x, pr| a1(x, pr))?;
    let m = bundle.sided_eval(i, s, Side::Minus, |x, pr| a1(x, pr))?;
    let iface = &bundle.interfaces[i];
    let (nu, k) = (iface.normal(s), iface.curvature(s));
    let h = 1e-3 * iface.length();
    let a2ss = fd_derivative(|q| Ok(a2(q)), s, 2, h)?;
    let a2s = a2(s);
    Ok(LaplacianDensities {
        monopole: -((p.grad() - m.grad()).dot(&nu) - a2ss),
        dipole: (p.value() - m.value()) - k * a2s,
        second_moment: a2s,
    })
}

/// ∫ g(g + g″) dθ plus the break terms Σ g(b)(g′(b⁺) − g′(b⁻)).
pub fn ridge_integral(profile: &AngularProfile) -> Result<f64> {
    if profile.is_smooth_periodic() {
        return integrate_periodic(|th| profile.g(th) * (profile.g(th) + profile.deriv(th, 2)), 256);
    }
    let mut total = 0.0;
    for (k, pc) in profile.pieces().iter().enumerate() {
        total += crate::numerics::quadrature::gauss_composite(
            |th| {
                let g = profile.piece_deriv(k, th, 0);
                g * (g + profile.piece_deriv(k, th, 2))
            },
            pc.start,
            pc.end,
            16,
            20,
        )?;
    }
    for (_, g, after, before) in profile.boundaries() {
        total += g * (after - before);
    }
    Ok(total)
}

/// Strength of the Dirac of Det(∇∇W) at the tip of w = r g(θ).
pub fn dirac_gaussian_strength(profile: &AngularProfile) -> Result<f64> {
    Ok(0.5 * ridge_integral(profile)?)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DegreeEstimate {
    pub degree: f64,
    pub slope: f64,
    pub fit_residual: f64,
    /// false when the log-log fit is not close to a straight line
    pub reliable: bool,
}

/// Degree of a distribution from its pairings with dilated bumps
/// φ_λ = λ⁻² φ(x/λ) for λ from 1 down to 1e−3.
pub fn estimate_degree(pairing: &dyn Fn(&TestFunction) -> Result<f64>, center: Vec2, radius: f64) -> Result<DegreeEstimate> {
    let mut xs = vec![];
    let mut ys = vec![];
    for k in 0..=12 {
        let lam = 10f64.powf(-3.0 * k as f64 / 12.0);
        let v = pairing(&make_bump(center, lam * radius))? / (lam * lam);
        if v == 0.0 || !v.is_finite() {
            return Err(VkError::Evaluation { what: "scaled pairing".into(), at: format!("lambda = {lam}") });
        }
        xs.push(lam.ln());
        ys.push(v.abs().ln());
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let fit_residual = xs.iter().zip(&ys).map(|(x, y)| (y - my - slope * (x - mx)).abs()).fold(0.0, f64::max);
    Ok(DegreeEstimate { degree: -slope - 2.0, slope, fit_residual, reliable: fit_residual < 0.1 })
}
