use crate::tensor::{rot90, Vec2};
use std::f64::consts::PI;

#[derive(Clone, Debug, PartialEq)]
pub enum Curve {
    /// Straight segment traversed from `a` to `b`; t = (b − a)/|b − a|.
    Segment { a: Vec2, b: Vec2 },
    /// Full circle. With `inward_normal` the tangent runs counter-clockwise
    /// and ν = −e_r; otherwise the tangent runs clockwise and ν = e_r.
    Circle { center: Vec2, radius: f64, inward_normal: bool },
}

/// A singular curve S with orientation (t, ν = e₃×t), curvature k = ⟨dt/ds, ν⟩,
/// fold strength γ₀ and interfacial loads.
#[derive(Clone, Debug, PartialEq)]
pub struct InterfaceSpec {
    pub label: String,
    pub curve: Curve,
    /// γ₀ with the concentration γ = γ₀ ν⊗ν; kinematically ⟦∇w⟧ = −γ₀ν
    pub gamma0: f64,
    /// transverse line force f₂ (coefficient of ψ)
    pub line_force: f64,
    /// transverse line couple (coefficient of ∂ψ/∂ν)
    pub line_couple: f64,
}

impl InterfaceSpec {
    pub fn segment(label: &str, a: Vec2, b: Vec2, gamma0: f64) -> Self {
        InterfaceSpec { label: label.into(), curve: Curve::Segment { a, b }, gamma0, line_force: 0.0, line_couple: 0.0 }
    }

    pub fn circle(label: &str, center: Vec2, radius: f64, inward_normal: bool, gamma0: f64) -> Self {
        InterfaceSpec {
            label: label.into(),
            curve: Curve::Circle { center, radius, inward_normal },
            gamma0,
            line_force: 0.0,
            line_couple: 0.0,
        }
    }

    pub fn length(&self) -> f64 {
        match &self.curve {
            Curve::Segment { a, b } => (b - a).norm(),
            Curve::Circle { radius, .. } => 2.0 * PI * radius,
        }
    }

    pub fn is_closed(&self) -> bool {
        matches!(self.curve, Curve::Circle { .. })
    }

    fn circle_angle(&self, s: f64) -> f64 {
        match &self.curve {
            Curve::Circle { radius, inward_normal, .. } => {
                if *inward_normal {
                    s / radius
                } else {
                    -s / radius
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn point(&self, s: f64) -> Vec2 {
        match &self.curve {
            Curve::Segment { a, b } => a + (b - a) * (s / (b - a).norm()),
            Curve::Circle { center, radius, .. } => {
                let al = self.circle_angle(s);
                center + Vec2::new(al.cos(), al.sin()) * *radius
            }
        }
    }

    pub fn tangent(&self, s: f64) -> Vec2 {
        match &self.curve {
            Curve::Segment { a, b } => (b - a).normalize(),
            Curve::Circle { inward_normal, .. } => {
                let al = self.circle_angle(s);
                let e_th = Vec2::new(-al.sin(), al.cos());
                if *inward_normal {
                    e_th
                } else {
                    -e_th
                }
            }
        }
    }

    pub fn normal(&self, s: f64) -> Vec2 {
        rot90(self.tangent(s))
    }

    pub fn curvature(&self, _s: f64) -> f64 {
        match &self.curve {
            Curve::Segment { .. } => 0.0,
            Curve::Circle { radius, inward_normal, .. } => {
                if *inward_normal {
                    1.0 / radius
                } else {
                    -1.0 / radius
                }
            }
        }
    }

    /// Distance from x to the curve.
    pub fn distance(&self, x: Vec2) -> f64 {
        match &self.curve {
            Curve::Segment { a, b } => {
                let d = b - a;
                let s = ((x - a).dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
                (x - (a + d * s)).norm()
            }
            Curve::Circle { center, radius, .. } => ((x - center).norm() - radius).abs(),
        }
    }

    /// Arclength stations where the circle ∂B_ε(c) crosses this curve.
    pub fn circle_crossings(&self, c: Vec2, eps: f64) -> Vec<f64> {
        match &self.curve {
            Curve::Segment { a, b } => {
                let len = (b - a).norm();
                let t = (b - a) / len;
                // |a + s t − c|² = ε²
                let m = a - c;
                let bq = m.dot(&t);
                let cq = m.norm_squared() - eps * eps;
                let disc = bq * bq - cq;
                if disc < 0.0 {
                    return vec![];
                }
                let sq = disc.sqrt();
                [-bq - sq, -bq + sq].into_iter().filter(|s| *s > 0.0 && *s < len).collect()
            }
            Curve::Circle { center, radius, .. } => {
                let d = (center - c).norm();
                if d > radius + eps || d < (radius - eps).abs() || d == 0.0 {
                    return vec![];
                }
                // intersection angles on this circle, measured from its center
                let base = (c - center).y.atan2((c - center).x);
                let cosv = (radius * radius + d * d - eps * eps) / (2.0 * radius * d);
                let half = cosv.clamp(-1.0, 1.0).acos();
                [base - half, base + half]
                    .into_iter()
                    .map(|al| {
                        let s = if self.curvature(0.0) > 0.0 { al * radius } else { -al * radius };
                        s.rem_euclid(2.0 * PI * radius)
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn circle_orientation_and_curvature() {
        for inward in [true, false] {
            let c = InterfaceSpec::circle("S", Vec2::zeros(), 2.0, inward, 1.0);
            for s in [0.1, 1.3, 5.0] {
                let h = 1e-5;
                let dt = (c.tangent(s + h) - c.tangent(s - h)) / (2.0 * h);
                assert_relative_eq!(dt.dot(&c.normal(s)), c.curvature(s), epsilon = 1e-8);
                let dp = (c.point(s + h) - c.point(s - h)) / (2.0 * h);
                assert_relative_eq!((dp - c.tangent(s)).norm(), 0.0, epsilon = 1e-8);
            }
            let er = c.point(0.7) / 2.0;
            let expect = if inward { -er } else { er };
            assert_relative_eq!((c.normal(0.7) - expect).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn segment_crossings() {
        let s = InterfaceSpec::segment("S", Vec2::new(-2.0, 0.0), Vec2::new(0.0, 0.0), 1.0);
        let hits = s.circle_crossings(Vec2::zeros(), 0.5);
        assert_eq!(hits.len(), 1);
        assert_relative_eq!(s.point(hits[0]).x, -0.5, epsilon = 1e-14);
    }
}
