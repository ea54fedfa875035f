//! Quadrature over test-function supports and along interfaces, split along S
//! and graded toward the singular point.

use crate::error::{Result, VkError};
use crate::fields::{Curve, FieldBundle};
use crate::numerics::{gauss_legendre, TestFunction};
use crate::tensor::Vec2;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadOptions {
    pub order: usize,
    pub angular_panels: usize,
    pub radial_panels: usize,
    /// geometric levels (ratio 2) toward the polar center
    pub grading_levels: usize,
    /// relative tolerance on the refinement difference, measured against ∫|f|
    pub rtol: f64,
    /// absolute floor on the refinement difference
    pub atol: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { order: 12, angular_panels: 4, radial_panels: 12, grading_levels: 12, rtol: 1e-7, atol: 0.0 }
    }
}

impl QuadOptions {
    fn refined(&self) -> QuadOptions {
        QuadOptions {
            angular_panels: 2 * self.angular_panels,
            radial_panels: 2 * self.radial_panels,
            grading_levels: self.grading_levels + 4,
            ..*self
        }
    }
}

/// Refined value, refinement difference, and ∫|f|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub estimate: f64,
    pub magnitude: f64,
}

struct Plan {
    center: Vec2,
    rays: Vec<f64>,
    radii: Vec<f64>,
}

fn tiny(bundle: &FieldBundle) -> f64 {
    1e-10 * bundle.scale
}

/// Polar center: O when it lies in the support. Otherwise the first of a circle
/// center, a point on a straight interface crossing the support, the bump
/// center, and O that every touching interface is radial or concentric about.
fn plan(bundle: &FieldBundle, psi: &TestFunction) -> Result<Plan> {
    let c = psi.center;
    let rho = psi.radius;
    if let Some(o) = bundle.origin.filter(|o| (o - c).norm() < rho) {
        // the grading toward a singular point inside the support needs it as center
        return plan_about(bundle, psi, o);
    }
    let mut candidates = vec![];
    for s in bundle.interfaces.iter().filter(|s| s.distance(c) < rho) {
        match &s.curve {
            Curve::Circle { center, .. } => candidates.push(*center),
            Curve::Segment { a, b } => {
                let d = (b - a).normalize();
                candidates.push(a + d * (c - a).dot(&d));
            }
        }
    }
    candidates.push(c);
    candidates.extend(bundle.origin);
    let mut last = None;
    for center in candidates {
        match plan_about(bundle, psi, center) {
            Ok(p) => return Ok(p),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least the bump center is a candidate"))
}

fn plan_about(bundle: &FieldBundle, psi: &TestFunction, center: Vec2) -> Result<Plan> {
    let c = psi.center;
    let rho = psi.radius;
    let touching: Vec<_> = bundle.interfaces.iter().filter(|s| s.distance(c) < rho).collect();
    let eps = tiny(bundle);
    let mut rays = vec![];
    let mut radii = vec![];
    for s in touching {
        match &s.curve {
            Curve::Segment { a, b } => {
                let d = b - a;
                let off = (d.x * (center.y - a.y) - d.y * (center.x - a.x)).abs() / d.norm();
                if off > eps {
                    return Err(VkError::Geometry(format!("interface {} is not radial about the quadrature center", s.label)));
                }
                for e in [a, b] {
                    if (e - center).norm() > eps && (e - c).norm() < rho {
                        return Err(VkError::Geometry(format!("endpoint of interface {} inside test-function support", s.label)));
                    }
                }
                let tau = (center - a).dot(&d) / d.norm_squared();
                if tau < 1.0 - 1e-12 {
                    rays.push(d.y.atan2(d.x));
                }
                if tau > 1e-12 {
                    rays.push((-d.y).atan2(-d.x));
                }
            }
            Curve::Circle { center: cc, radius, .. } => {
                if (cc - center).norm() > eps {
                    return Err(VkError::Geometry(format!("circle {} is not centered at the quadrature center", s.label)));
                }
                radii.push(*radius);
            }
        }
    }
    rays.sort_by(|a, b| a.total_cmp(b));
    rays.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    radii.sort_by(|a, b| a.total_cmp(b));
    Ok(Plan { center, rays, radii })
}

/// Gauss nodes and weights mapped to the panels of [a, b].
fn push_nodes(out: &mut Vec<(f64, f64)>, a: f64, b: f64, panels: usize, order: usize) {
    if !(b > a) {
        return;
    }
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    for p in 0..panels {
        let mid = a + h * (p as f64 + 0.5);
        for (xi, wi) in x.iter().zip(w) {
            out.push((mid + 0.5 * h * xi, 0.5 * h * wi));
        }
    }
}

/// Nodes on [a, b] graded geometrically toward a (when `grade_low`) and/or b.
fn graded_nodes(a: f64, b: f64, grade_low: bool, grade_high: bool, opts: &QuadOptions) -> Vec<(f64, f64)> {
    let mut out = vec![];
    let len = b - a;
    let lo = if grade_low { a + 0.25 * len } else { a };
    let hi = if grade_high { b - 0.25 * len } else { b };
    if grade_low {
        push_nodes(&mut out, a, a + 0.25 * len * 0.5f64.powi(opts.grading_levels as i32), 1, opts.order);
        for k in (0..opts.grading_levels).rev() {
            let l = a + 0.25 * len * 0.5f64.powi(k as i32 + 1);
            let r = a + 0.25 * len * 0.5f64.powi(k as i32);
            push_nodes(&mut out, l, r, 1, opts.order);
        }
    }
    push_nodes(&mut out, lo, hi, opts.radial_panels, opts.order);
    if grade_high {
        for k in 0..opts.grading_levels {
            let l = b - 0.25 * len * 0.5f64.powi(k as i32);
            let r = b - 0.25 * len * 0.5f64.powi(k as i32 + 1);
            push_nodes(&mut out, l, r, 1, opts.order);
        }
        push_nodes(&mut out, b - 0.25 * len * 0.5f64.powi(opts.grading_levels as i32), b, 1, opts.order);
    }
    out
}

fn polar_sum(plan: &Plan, psi: &TestFunction, f: &dyn Fn(Vec2) -> f64, opts: &QuadOptions) -> Result<(f64, f64)> {
    let dc = psi.center - plan.center;
    let d = dc.norm();
    let rho = psi.radius;
    let phic = dc.y.atan2(dc.x);
    let inside = d < rho * (1.0 - 1e-12);
    // angular sectors
    let mut sectors: Vec<(f64, f64)> = vec![];
    if inside {
        if plan.rays.is_empty() {
            sectors.push((-PI, PI));
        } else {
            let n = plan.rays.len();
            for k in 0..n {
                let a = plan.rays[k];
                let b = if k + 1 < n { plan.rays[k + 1] } else { plan.rays[0] + 2.0 * PI };
                sectors.push((a, b));
            }
        }
    } else {
        let beta = (rho / d).min(1.0).asin();
        let (lo, hi) = (phic - beta, phic + beta);
        let mut cuts = vec![lo];
        for r in &plan.rays {
            let mut a = *r;
            a += 2.0 * PI * ((phic - a) / (2.0 * PI)).round();
            if a > lo && a < hi {
                cuts.push(a);
            }
        }
        cuts.push(hi);
        cuts.sort_by(|a, b| a.total_cmp(b));
        for w in cuts.windows(2) {
            sectors.push((w[0], w[1]));
        }
    }
    let mut sum = 0.0;
    let mut abs = 0.0;
    let mut th_nodes = vec![];
    for (a, b) in sectors {
        push_nodes(&mut th_nodes, a, b, opts.angular_panels, opts.order);
    }
    for (th, wt) in th_nodes {
        let e = Vec2::new(th.cos(), th.sin());
        let delta = th - phic;
        let disc = (rho * rho - d * d * delta.sin().powi(2)).max(0.0).sqrt();
        let proj = d * delta.cos();
        let (r_lo, r_hi) = if inside { (0.0, proj + disc) } else { ((proj - disc).max(0.0), proj + disc) };
        if !(r_hi > r_lo) {
            continue;
        }
        let mut cuts = vec![r_lo];
        cuts.extend(plan.radii.iter().copied().filter(|r| *r > r_lo && *r < r_hi));
        cuts.push(r_hi);
        for (k, w) in cuts.windows(2).enumerate() {
            let nodes = graded_nodes(w[0], w[1], inside && k == 0, false, opts);
            for (r, wr) in nodes {
                let x = plan.center + e * r;
                let v = f(x);
                if !v.is_finite() {
                    return Err(VkError::Evaluation { what: "area integrand".into(), at: format!("({}, {})", x.x, x.y) });
                }
                sum += wt * wr * r * v;
                abs += wt * wr * r * v.abs();
            }
        }
    }
    Ok((sum, abs))
}

/// Extra refinement levels tried before giving up on the tolerance.
const MAX_REFINEMENTS: usize = 3;

/// Doubles the resolution until two successive sums agree to max(rtol·∫|f|, atol).
fn refine(sum: &dyn Fn(&QuadOptions) -> Result<(f64, f64)>, opts: &QuadOptions, what: &str) -> Result<QuadResult> {
    let mut level = *opts;
    let (mut prev, _) = sum(&level)?;
    let mut last = VkError::Accuracy { what: what.into(), estimate: f64::INFINITY, target: 0.0 };
    for _ in 0..=MAX_REFINEMENTS {
        level = level.refined();
        let (v, abs) = sum(&level)?;
        let estimate = (v - prev).abs();
        let target = (opts.rtol * abs).max(opts.atol);
        if estimate <= target.max(f64::MIN_POSITIVE) {
            return Ok(QuadResult { value: v, estimate, magnitude: abs });
        }
        last = VkError::Accuracy { what: what.into(), estimate, target };
        prev = v;
    }
    Err(last)
}

/// ∫ f da over the support of ψ (f is expected to carry the ψ factor).
pub fn integrate_support(bundle: &FieldBundle, psi: &TestFunction, f: &dyn Fn(Vec2) -> f64, opts: &QuadOptions) -> Result<QuadResult> {
    let p = plan(bundle, psi)?;
    refine(&|o| polar_sum(&p, psi, f, o), opts, "area quadrature")
}

/// Arclength intervals of interface `i` inside the support of ψ, with flags
/// marking ends that sit on the singular point.
fn interface_intervals(bundle: &FieldBundle, i: usize, psi: &TestFunction) -> Vec<(f64, f64, bool, bool)> {
    let s = &bundle.interfaces[i];
    let len = s.length();
    let mut cuts = s.circle_crossings(psi.center, psi.radius);
    let at_origin = |st: f64| bundle.origin.map(|o| (s.point(st) - o).norm() < tiny(bundle)).unwrap_or(false);
    let mut out = vec![];
    if s.is_closed() {
        cuts.sort_by(|a, b| a.total_cmp(b));
        if cuts.is_empty() {
            if psi.contains(s.point(0.0)) {
                out.push((0.0, len, false, false));
            }
            return out;
        }
        let n = cuts.len();
        for k in 0..n {
            let a = cuts[k];
            let b = if k + 1 < n { cuts[k + 1] } else { cuts[0] + len };
            if psi.contains(s.point(0.5 * (a + b))) {
                out.push((a, b, false, false));
            }
        }
    } else {
        cuts.push(0.0);
        cuts.push(len);
        cuts.sort_by(|a, b| a.total_cmp(b));
        for w in cuts.windows(2) {
            if w[1] > w[0] && psi.contains(s.point(0.5 * (w[0] + w[1]))) {
                out.push((w[0], w[1], at_origin(w[0]), at_origin(w[1])));
            }
        }
    }
    out
}

fn line_sum(bundle: &FieldBundle, i: usize, psi: &TestFunction, f: &dyn Fn(f64) -> f64, opts: &QuadOptions) -> Result<(f64, f64)> {
    let mut sum = 0.0;
    let mut abs = 0.0;
    for (a, b, ga, gb) in interface_intervals(bundle, i, psi) {
        let o = QuadOptions { radial_panels: opts.radial_panels * 2, ..*opts };
        for (s, w) in graded_nodes(a, b, ga, gb, &o) {
            let v = f(s);
            if !v.is_finite() {
                return Err(VkError::Evaluation { what: "line integrand".into(), at: format!("s = {s}") });
            }
            sum += w * v;
            abs += w * v.abs();
        }
    }
    Ok((sum, abs))
}

/// ∫_S f ds over the part of interface `i` inside the support of ψ.
pub fn integrate_interface(bundle: &FieldBundle, i: usize, psi: &TestFunction, f: &dyn Fn(f64) -> f64, opts: &QuadOptions) -> Result<QuadResult> {
    refine(&|o| line_sum(bundle, i, psi, f, o), opts, "line quadrature")
}
