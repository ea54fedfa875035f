//! Height-field grids of w over the plate, cut along the folds so that no cell
//! crosses one, written as CSV points or an OBJ mesh.

use crate::config::ScenarioParams;
use anyhow::{bail, Result};
use std::f64::consts::PI;
use std::fmt::Write;
use vkplate::fields::{Curve, FieldBundle};
use vkplate::scenarios::Scenario;
use vkplate::tensor::Vec2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Obj,
}

#[derive(Clone, Debug, Default)]
pub struct Surface {
    pub vertices: Vec<[f64; 3]>,
    pub triangles: Vec<[usize; 3]>,
    /// (label, points on the fold with their heights)
    pub folds: Vec<(String, Vec<[f64; 3]>)>,
}

/// Splits [lo, hi] at `cuts` and spreads about `n` intervals over the pieces,
/// at least one per piece.
fn axis(lo: f64, hi: f64, cuts: &[f64], n: usize) -> Vec<f64> {
    let mut knots = vec![lo];
    let mut inner: Vec<f64> = cuts.iter().copied().filter(|c| *c > lo + 1e-12 * (hi - lo) && *c < hi - 1e-12 * (hi - lo)).collect();
    inner.sort_by(|a, b| a.total_cmp(b));
    inner.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    knots.extend(inner);
    knots.push(hi);
    let mut out = vec![lo];
    for w in knots.windows(2) {
        let m = ((n as f64 * (w[1] - w[0]) / (hi - lo)).round() as usize).max(1);
        for k in 1..=m {
            out.push(w[0] + (w[1] - w[0]) * k as f64 / m as f64);
        }
    }
    out
}

fn height(b: &FieldBundle, x: Vec2) -> Result<f64> {
    let mut w = b.w_jet(x, x).value();
    if let (false, Some(o)) = (w.is_finite(), b.origin) {
        // the tip itself: continuous limit along a short ray
        if (x - o).norm() <= 1e-12 * b.scale {
            let y = o + Vec2::new(1e-13 * b.scale, 0.0);
            w = b.w_jet(y, y).value();
        }
    }
    if !w.is_finite() {
        bail!("w is not finite at ({}, {})", x.x, x.y);
    }
    Ok(w)
}

/// Tensor-product grid of points `at(i, j)`; quads split into two triangles,
/// dropping the degenerate one when a whole row collapses to a point.
fn grid(b: &FieldBundle, us: &[f64], vs: &[f64], at: &dyn Fn(f64, f64) -> Vec2) -> Result<Surface> {
    let mut s = Surface::default();
    let nv = vs.len();
    for &u in us {
        for &v in vs {
            let x = at(u, v);
            s.vertices.push([x.x, x.y, height(b, x)?]);
        }
    }
    let id = |i: usize, j: usize| i * nv + j;
    let same = |a: usize, c: usize| {
        let (p, q) = (s.vertices[a], s.vertices[c]);
        p[0] == q[0] && p[1] == q[1]
    };
    let mut tris = vec![];
    for i in 0..us.len() - 1 {
        for j in 0..nv - 1 {
            let (a, bb, c, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            if same(a, d) {
                tris.push([a, bb, c]);
            } else {
                tris.push([a, bb, d]);
                if !same(bb, c) {
                    tris.push([d, bb, c]);
                }
            }
        }
    }
    s.triangles = tris;
    Ok(s)
}

fn fold_polylines(b: &FieldBundle, inside: &dyn Fn(Vec2) -> bool, samples: usize) -> Result<Vec<(String, Vec<[f64; 3]>)>> {
    let mut out = vec![];
    for iface in &b.interfaces {
        let n = match iface.curve {
            Curve::Segment { .. } => samples,
            Curve::Circle { .. } => 4 * samples,
        };
        let len = iface.length();
        let mut pts = vec![];
        for k in 0..=n {
            let x = iface.point(len * k as f64 / n as f64);
            if inside(x) {
                pts.push([x.x, x.y, height(b, x)?]);
            }
        }
        out.push((iface.label.clone(), pts));
    }
    Ok(out)
}

/// Polar (n_r, n_θ) grid about O or the fold circle's center, out to the
/// bundle scale; for the straight fold a (n_q, n_s) grid over [a₀, a₁] × [−L, L].
pub fn build_surface(sc: &Scenario, params: &ScenarioParams, n: (usize, usize)) -> Result<Surface> {
    if n.0 == 0 || n.1 == 0 {
        bail!("grid sizes must be positive");
    }
    let b = &sc.bundle;
    if let ScenarioParams::LinearFold(p) = params {
        let l = b.scale;
        let qs = axis(p.a0, p.a1, &[0.0], n.0);
        let ss = axis(-l, l, &[], n.1);
        let mut s = grid(b, &qs, &ss, &|q, t| Vec2::new(q, t))?;
        let tol = 1e-12 * l;
        let inside = |x: Vec2| x.x >= p.a0 - tol && x.x <= p.a1 + tol && x.y.abs() <= l + tol;
        s.folds = fold_polylines(b, &inside, n.1)?;
        return Ok(s);
    }
    let circle = b.interfaces.iter().find_map(|s| match s.curve {
        Curve::Circle { center, .. } => Some(center),
        _ => None,
    });
    let center = b.origin.or(circle).unwrap_or_else(Vec2::zeros);
    let r_max = b.scale;
    let mut th_cuts = vec![];
    let mut r_cuts = vec![];
    for iface in &b.interfaces {
        match iface.curve {
            Curve::Segment { a, b: e } => {
                for p in [a, e] {
                    let d = p - center;
                    if d.norm() > 1e-12 * r_max {
                        th_cuts.push(d.y.atan2(d.x));
                    }
                }
            }
            Curve::Circle { radius, .. } => r_cuts.push(radius),
        }
    }
    let rs = axis(0.0, r_max, &r_cuts, n.0);
    let ths = axis(-PI, PI, &th_cuts, n.1);
    let mut s = grid(b, &rs, &ths, &|r, th| center + Vec2::new(th.cos(), th.sin()) * r)?;
    let inside = |x: Vec2| (x - center).norm() <= r_max * (1.0 + 1e-12);
    s.folds = fold_polylines(b, &inside, n.0)?;
    Ok(s)
}

pub fn render(s: &Surface, format: Format, title: &str) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("x1,x2,w\n");
            for v in &s.vertices {
                let _ = writeln!(out, "{},{},{}", v[0], v[1], v[2]);
            }
            for (label, pts) in &s.folds {
                let _ = writeln!(out, "# fold {label}");
                for v in pts {
                    let _ = writeln!(out, "{},{},{}", v[0], v[1], v[2]);
                }
            }
        }
        Format::Obj => {
            let _ = writeln!(out, "# {title}");
            let _ = writeln!(out, "o surface");
            for v in &s.vertices {
                let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
            }
            for t in &s.triangles {
                let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
            }
            let mut next = s.vertices.len() + 1;
            for (label, pts) in &s.folds {
                if pts.len() < 2 {
                    continue;
                }
                let _ = writeln!(out, "o fold_{label}");
                for v in pts {
                    let _ = writeln!(out, "v {} {} {}", v[0], v[1], v[2]);
                }
                let idx: Vec<String> = (next..next + pts.len()).map(|k| k.to_string()).collect();
                let _ = writeln!(out, "l {}", idx.join(" "));
                next += pts.len();
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{FoldRay, LinearFold, TetrahedralFolds};
    use vkplate::fields::Material;
    use vkplate::scenarios::{make_disclination, make_linear_fold, make_tetrahedral_folds};

    fn mat() -> Material {
        Material::new(1.0, 1.0, 0.3).unwrap()
    }

    #[test]
    fn axis_hits_every_cut() {
        let a = axis(-PI, PI, &[0.5, PI], 12);
        assert_eq!(a[0], -PI);
        assert_eq!(*a.last().unwrap(), PI);
        assert!(a.iter().any(|x| (*x - 0.5).abs() < 1e-15));
        assert!(a.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn disclination_is_a_perfect_cone() {
        let s = 2.0;
        let sc = make_disclination(s, mat(), 0.0).unwrap();
        let p = ScenarioParams::Disclination(crate::config::Disclination { s, phase: 0.0 });
        let surf = build_surface(&sc, &p, (6, 16)).unwrap();
        for v in &surf.vertices {
            let r = v[0].hypot(v[1]);
            assert!((v[2] - r * (s / PI).sqrt()).abs() < 1e-12);
        }
        assert_eq!(surf.triangles.len(), 16 + 2 * 5 * 16);
    }

    #[test]
    fn linear_fold_is_planar_on_each_side_of_the_hinge() {
        let p = LinearFold { gamma0: 0.1, b0: 0.0, b1: 0.0, a0: -1.0, a1: 1.0 };
        let sc = make_linear_fold(p.gamma0, p.b0, p.b1, p.a0, p.a1, mat()).unwrap();
        let surf = build_surface(&sc, &ScenarioParams::LinearFold(p), (8, 4)).unwrap();
        for v in &surf.vertices {
            let expect = if v[0] > 0.0 { 0.1 * v[0] } else { 0.0 };
            assert!((v[2] - expect).abs() < 1e-14);
        }
        assert!(surf.vertices.iter().any(|v| v[0] == 0.0));
        assert_eq!(surf.folds.len(), 1);
    }

    #[test]
    fn tetrahedral_triangles_stay_inside_sectors() {
        let rays = [(90.0, 0.2), (210.0, 0.2), (330.0, 0.2)];
        let folds: Vec<(f64, f64)> = rays.iter().map(|&(a, g): &(f64, f64)| (a.to_radians(), g)).collect();
        let (sc, _) = make_tetrahedral_folds(&folds, mat()).unwrap();
        let p = ScenarioParams::TetrahedralFolds(TetrahedralFolds {
            folds: rays.iter().map(|&(angle_deg, gamma)| FoldRay { angle_deg, gamma }).collect(),
        });
        let surf = build_surface(&sc, &p, (4, 12)).unwrap();
        let vkplate::fields::ScalarField::SectorAffine(sectors) = &sc.bundle.w else { panic!("tetrahedral folds are sector-affine") };
        for t in &surf.triangles {
            let c: Vec2 = t.iter().map(|&k| Vec2::new(surf.vertices[k][0], surf.vertices[k][1])).sum::<Vec2>() / 3.0;
            let owner = sectors.sector(c);
            // every vertex lies on the planar facet of the triangle's sector
            for &k in t {
                let v = surf.vertices[k];
                let g = sectors.gradients[owner];
                assert!((v[2] - (g.x * v[0] + g.y * v[1])).abs() < 1e-12);
            }
        }
    }
}
