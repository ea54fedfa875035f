//! Circle integrals around the singular point whose values are the
//! coefficients of point-supported distributions.

use crate::error::{Result, VkError};
use crate::fields::{FieldBundle, Side};
use crate::numerics::gauss_legendre;
use crate::tensor::{form, Mat2, Vec2};
use std::f64::consts::PI;

const ORDER: usize = 20;
const PANELS: usize = 8;

struct Crossing {
    iface: usize,
    s: f64,
    /// +1 when t points toward the center
    sigma: f64,
    e_r: Vec2,
    e_th: Vec2,
    p: Vec2,
}

struct LoopGeometry {
    /// (x, e_r, e_θ, arclength weight)
    nodes: Vec<(Vec2, Vec2, Vec2, f64)>,
    crossings: Vec<Crossing>,
}

fn geometry(bundle: &FieldBundle, center: Vec2, eps: f64) -> Result<LoopGeometry> {
    if !(eps > bundle.exclusion) {
        return Err(VkError::Precondition(format!("loop radius {eps} not above the exclusion radius")));
    }
    let mut crossings = vec![];
    for (i, iface) in bundle.interfaces.iter().enumerate() {
        for s in iface.circle_crossings(center, eps) {
            let p = iface.point(s);
            let e_r = (p - center) / eps;
            let t = iface.tangent(s);
            let c = t.dot(&e_r);
            if c.abs() < 1.0 - 1e-9 {
                return Err(VkError::Geometry(format!("interface {} crosses the loop non-radially", iface.label)));
            }
            crossings.push(Crossing {
                iface: i,
                s,
                sigma: if c < 0.0 { 1.0 } else { -1.0 },
                e_r,
                e_th: Vec2::new(-e_r.y, e_r.x),
                p,
            });
        }
    }
    let mut cuts: Vec<f64> = crossings.iter().map(|c| c.e_r.y.atan2(c.e_r.x)).collect();
    cuts.sort_by(|a, b| a.total_cmp(b));
    let sectors: Vec<(f64, f64)> = if cuts.is_empty() {
        vec![(-PI, PI)]
    } else {
        let n = cuts.len();
        (0..n).map(|k| (cuts[k], if k + 1 < n { cuts[k + 1] } else { cuts[0] + 2.0 * PI })).collect()
    };
    let (gx, gw) = gauss_legendre(ORDER);
    let mut nodes = vec![];
    for (a, b) in sectors {
        let h = (b - a) / PANELS as f64;
        for p in 0..PANELS {
            let mid = a + h * (p as f64 + 0.5);
            for (xi, wi) in gx.iter().zip(gw) {
                let th = mid + 0.5 * h * xi;
                let e_r = Vec2::new(th.cos(), th.sin());
                nodes.push((center + e_r * eps, e_r, Vec2::new(-e_r.y, e_r.x), 0.5 * h * wi * eps));
            }
        }
    }
    Ok(LoopGeometry { nodes, crossings })
}

fn check(v: f64, x: Vec2) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(VkError::Evaluation { what: "loop integrand".into(), at: format!("({}, {})", x.x, x.y) })
    }
}

/// ∫_{∂B_ε − S} ⟨v, e_θ⟩ dl + Σ_p ⟨v₂(p), e_θ⟩ for a bulk vector field v and
/// an interfacial vector density v₂ (interface index, arclength).
pub fn loop_integral_curl(
    bundle: &FieldBundle,
    center: Vec2,
    eps: f64,
    v: &dyn Fn(Vec2) -> Vec2,
    line: &dyn Fn(usize, f64) -> Vec2,
) -> Result<f64> {
    let g = geometry(bundle, center, eps)?;
    let mut sum = 0.0;
    for (x, _, e_th, w) in &g.nodes {
        sum += w * check(v(*x).dot(e_th), *x)?;
    }
    for c in &g.crossings {
        sum += check(line(c.iface, c.s).dot(&c.e_th), c.p)?;
    }
    Ok(sum)
}

/// Row-wise version for tensor fields: ∫ a e_θ dl + Σ a₂(p) e_θ.
pub fn loop_integral_curl_rows(
    bundle: &FieldBundle,
    center: Vec2,
    eps: f64,
    a: &dyn Fn(Vec2) -> Mat2,
    line: &dyn Fn(usize, f64) -> Mat2,
) -> Result<Vec2> {
    let g = geometry(bundle, center, eps)?;
    let mut sum = Vec2::zeros();
    for (x, _, e_th, w) in &g.nodes {
        let v = a(*x) * e_th;
        check(v.x + v.y, *x)?;
        sum += v * *w;
    }
    for c in &g.crossings {
        sum += line(c.iface, c.s) * c.e_th;
    }
    Ok(sum)
}

/// L(x₀) = ∫_{∂B_ε}(a e_r − (x − x₀)⟨div a, e_r⟩) dl − Σ_p σ_p ⟨⟦a⟧t, ν⟩(p)(p − x₀),
/// where `a(x, probe)` returns (a, div a) and σ_p = +1 when t points toward the center.
/// For a balanced field L(x₀) = f⃗₁ + f₀ x₀.
pub fn loop_integral_moment(
    bundle: &FieldBundle,
    center: Vec2,
    eps: f64,
    x0: Vec2,
    a: &dyn Fn(Vec2, Vec2) -> (Mat2, Vec2),
) -> Result<Vec2> {
    let g = geometry(bundle, center, eps)?;
    let mut sum = Vec2::zeros();
    for (x, e_r, _, w) in &g.nodes {
        let (m, d) = a(*x, *x);
        let v = m * e_r - (x - x0) * d.dot(e_r);
        check(v.x + v.y, *x)?;
        sum += v * *w;
    }
    for c in &g.crossings {
        let iface = &bundle.interfaces[c.iface];
        let (t, nu) = (iface.tangent(c.s), iface.normal(c.s));
        let plus = bundle.sided_eval(c.iface, c.s, Side::Plus, |x, p| a(x, p).0)?;
        let minus = bundle.sided_eval(c.iface, c.s, Side::Minus, |x, p| a(x, p).0)?;
        let jt = form(&(plus - minus), t, nu);
        sum -= (c.p - x0) * (c.sigma * check(jt, c.p)?);
    }
    Ok(sum)
}

/// Point force f₀ and dipole f⃗₁ recovered from the moment loop at x₀ = center,
/// center + e₁ and center + e₂.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointLoads {
    pub f0: f64,
    pub f1: Vec2,
    /// largest disagreement between the two determinations of f₀ and the
    /// off-diagonal parts that linearity forces to vanish
    pub consistency: f64,
}

pub fn point_loads(bundle: &FieldBundle, center: Vec2, eps: f64, a: &dyn Fn(Vec2, Vec2) -> (Mat2, Vec2)) -> Result<PointLoads> {
    let l0 = loop_integral_moment(bundle, center, eps, center, a)?;
    let l1 = loop_integral_moment(bundle, center, eps, center + Vec2::new(1.0, 0.0), a)?;
    let l2 = loop_integral_moment(bundle, center, eps, center + Vec2::new(0.0, 1.0), a)?;
    let d1 = l1 - l0;
    let d2 = l2 - l0;
    let f0 = 0.5 * (d1.x + d2.y);
    let consistency = (d1.x - d2.y).abs().max(d1.y.abs()).max(d2.x.abs());
    let scale = f0.abs().max(l0.norm()).max(1.0);
    if consistency > 1e-8 * scale {
        return Err(VkError::Convergence { what: "point-load consistency".into(), detail: format!("mismatch {consistency:.3e}") });
    }
    Ok(PointLoads { f0, f1: l0 - center * f0, consistency })
}
