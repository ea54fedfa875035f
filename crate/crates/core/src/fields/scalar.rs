use super::profile::AngularProfile;
use crate::numerics::jet::{polar, Jet};
use crate::tensor::Vec2;

/// Σ c·x₁^a x₂^b.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly2 {
    pub terms: Vec<(u32, u32, f64)>,
}

impl Poly2 {
    pub fn new(terms: Vec<(u32, u32, f64)>) -> Self {
        Poly2 { terms }
    }

    pub fn jet(&self, x: Vec2) -> Jet {
        let (x1, x2) = Jet::coords(x);
        let mut out = Jet::zero();
        for &(a, b, c) in &self.terms {
            out += x1.powi(a) * x2.powi(b) * c;
        }
        out
    }
}

/// w = f(q), q = ⟨x, c⟩, with f a polynomial in (q − q₀) on each side of q₀.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseCylindricalField {
    pub direction: Vec2,
    pub q0: f64,
    /// coefficients of (q − q₀)^n for q < q₀
    pub below: Vec<f64>,
    /// coefficients of (q − q₀)^n for q ≥ q₀
    pub above: Vec<f64>,
}

impl PiecewiseCylindricalField {
    pub fn q(&self, x: Vec2) -> f64 {
        x.dot(&self.direction)
    }

    pub fn coeffs_at(&self, q: f64) -> &[f64] {
        if q < self.q0 {
            &self.below
        } else {
            &self.above
        }
    }

    /// n-th derivative of f on the side containing `side_q`, evaluated at q.
    pub fn f_deriv(&self, side_q: f64, q: f64, n: usize) -> f64 {
        let c = self.coeffs_at(side_q);
        let d = q - self.q0;
        let mut out = 0.0;
        for (k, ck) in c.iter().enumerate().skip(n) {
            let mut fall = 1.0;
            for j in 0..n {
                fall *= (k - j) as f64;
            }
            out += ck * fall * d.powi((k - n) as i32);
        }
        out
    }
}

/// Sector-wise affine w: in the sector between consecutive rays (ccw angles),
/// w = ⟨gᵢ, x − O⟩.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorAffineField {
    pub origin: Vec2,
    /// ray angles in (−π, π], strictly increasing
    pub rays: Vec<f64>,
    /// gradient in the sector starting at rays[i] (ccw) up to rays[i+1]
    pub gradients: Vec<Vec2>,
}

impl SectorAffineField {
    pub fn sector(&self, x: Vec2) -> usize {
        let d = x - self.origin;
        let th = d.y.atan2(d.x);
        let n = self.rays.len();
        for i in 0..n {
            let a = self.rays[i];
            let span = (self.rays[(i + 1) % n] - a).rem_euclid(2.0 * std::f64::consts::PI);
            let span = if span == 0.0 { 2.0 * std::f64::consts::PI } else { span };
            let rel = (th - a).rem_euclid(2.0 * std::f64::consts::PI);
            if rel < span {
                return i;
            }
        }
        n - 1
    }
}

/// Radially symmetric w = p(|x − c|) split at r₀, with an optional ln r term
/// outside.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseRadialField {
    pub center: Vec2,
    pub r0: f64,
    /// coefficients of r^n for r < r₀
    pub inner: Vec<f64>,
    /// coefficients of r^n for r ≥ r₀
    pub outer: Vec<f64>,
    /// coefficient of ln r for r ≥ r₀
    pub outer_log: f64,
}

/// Scalar field classes used for the transverse displacement and the stress function.
#[derive(Clone, Debug, PartialEq)]
pub enum ScalarField {
    Zero,
    /// w = r·g(θ) about `origin`
    Conical { origin: Vec2, profile: AngularProfile },
    /// φ = c·ln r about `origin`
    Log { origin: Vec2, coefficient: f64 },
    Cylindrical(PiecewiseCylindricalField),
    SectorAffine(SectorAffineField),
    Radial(PiecewiseRadialField),
    Polynomial(Poly2),
    /// `positive` where ⟨x − point, normal⟩ ≥ 0, `negative` elsewhere
    HalfPlane { point: Vec2, normal: Vec2, positive: Poly2, negative: Poly2 },
}

impl ScalarField {
    pub fn is_zero(&self) -> bool {
        matches!(self, ScalarField::Zero)
    }

    /// Jet at `x` of the analytic piece that contains `probe`.
    pub fn jet_at(&self, x: Vec2, probe: Vec2) -> Jet {
        match self {
            ScalarField::Zero => Jet::zero(),
            ScalarField::Conical { origin, profile } => {
                let dp = probe - origin;
                let (piece, th_p) = profile.locate(dp.y.atan2(dp.x));
                let dx = x - origin;
                let mut th_x = dx.y.atan2(dx.x);
                let two_pi = 2.0 * std::f64::consts::PI;
                th_x += two_pi * ((th_p - th_x) / two_pi).round();
                let (r, th) = polar(x, *origin, th_x);
                r * profile.piece_jet(piece, &th)
            }
            ScalarField::Log { origin, coefficient } => {
                let (x1, x2) = Jet::coords(x);
                let d1 = x1 - origin.x;
                let d2 = x2 - origin.y;
                (d1 * d1 + d2 * d2).ln() * (0.5 * coefficient)
            }
            ScalarField::Cylindrical(f) => {
                let side = f.coeffs_at(f.q(probe));
                let (x1, x2) = Jet::coords(x);
                let d = x1 * f.direction.x + x2 * f.direction.y - f.q0;
                horner(side, d)
            }
            ScalarField::SectorAffine(f) => {
                let g = f.gradients[f.sector(probe)];
                let (x1, x2) = Jet::coords(x);
                (x1 - f.origin.x) * g.x + (x2 - f.origin.y) * g.y
            }
            ScalarField::Radial(f) => {
                let inside = (probe - f.center).norm() < f.r0;
                let (side, log) = if inside { (&f.inner, 0.0) } else { (&f.outer, f.outer_log) };
                if log == 0.0 && side.iter().skip(1).all(|c| *c == 0.0) {
                    return Jet::constant(side.first().copied().unwrap_or(0.0));
                }
                let (x1, x2) = Jet::coords(x);
                let d1 = x1 - f.center.x;
                let d2 = x2 - f.center.y;
                let rr = d1 * d1 + d2 * d2;
                let mut out = horner(side, rr.sqrt());
                if log != 0.0 {
                    out += rr.ln() * (0.5 * log);
                }
                out
            }
            ScalarField::Polynomial(p) => p.jet(x),
            ScalarField::HalfPlane { point, normal, positive, negative } => {
                if (probe - point).dot(normal) >= 0.0 {
                    positive.jet(x)
                } else {
                    negative.jet(x)
                }
            }
        }
    }
}

fn horner(c: &[f64], d: Jet) -> Jet {
    let mut out = Jet::zero();
    for ck in c.iter().rev() {
        out = out * d + *ck;
    }
    out
}
