use super::scalar::Poly2;
use crate::numerics::Jet;
use crate::tensor::{Grad3, Mat2, Vec2};

/// Symmetric tensor field classes for plastic strains and planted test data.
#[derive(Clone, Debug, PartialEq)]
pub enum TensorField {
    Zero,
    Constant(Mat2),
    /// c·e_r⊗e_r for |x − center| ≥ r₀, zero inside
    RadialDyadOutside { center: Vec2, r0: f64, coefficient: f64 },
    /// `positive` where ⟨x − point, normal⟩ ≥ 0, `negative` otherwise
    HalfPlane { point: Vec2, normal: Vec2, positive: Mat2, negative: Mat2 },
    /// c·ln|x − O|·I
    IsotropicLog { origin: Vec2, coefficient: f64 },
    /// components (11, 12, 22)
    Polynomial([Poly2; 3]),
}

/// Jets of the (11, 12, 22) components.
#[derive(Clone, Copy, Debug)]
pub struct TensorJet(pub [Jet; 3]);

impl TensorJet {
    pub fn zero() -> Self {
        TensorJet([Jet::zero(); 3])
    }

    pub fn constant(m: &Mat2) -> Self {
        TensorJet([Jet::constant(m[(0, 0)]), Jet::constant(m[(0, 1)]), Jet::constant(m[(1, 1)])])
    }

    pub fn value(&self) -> Mat2 {
        let [a, b, c] = &self.0;
        Mat2::new(a.value(), b.value(), b.value(), c.value())
    }

    pub fn grad(&self) -> Grad3 {
        let [a, b, c] = &self.0;
        [
            Mat2::new(a.partial(1, 0), b.partial(1, 0), b.partial(1, 0), c.partial(1, 0)),
            Mat2::new(a.partial(0, 1), b.partial(0, 1), b.partial(0, 1), c.partial(0, 1)),
        ]
    }

    /// a₂₂,₁₁ − 2a₁₂,₁₂ + a₁₁,₂₂
    pub fn curl_curl(&self) -> f64 {
        let [a, b, c] = &self.0;
        c.partial(2, 0) - 2.0 * b.partial(1, 1) + a.partial(0, 2)
    }

    /// a_ij,ij
    pub fn div_div(&self) -> f64 {
        let [a, b, c] = &self.0;
        a.partial(2, 0) + 2.0 * b.partial(1, 1) + c.partial(0, 2)
    }

    pub fn laplacian_trace(&self) -> f64 {
        let [a, _, c] = &self.0;
        a.laplacian() + c.laplacian()
    }

    pub fn det(&self) -> f64 {
        self.value().determinant()
    }

    pub fn add(&self, o: &TensorJet) -> TensorJet {
        TensorJet([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn scale(&self, s: f64) -> TensorJet {
        TensorJet([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    /// Symmetric part of a⊗b.
    pub fn dyad(a: [Jet; 2], b: [Jet; 2]) -> TensorJet {
        TensorJet([a[0] * b[0], (a[0] * b[1] + a[1] * b[0]) * 0.5, a[1] * b[1]])
    }
}

impl TensorField {
    pub fn is_zero(&self) -> bool {
        matches!(self, TensorField::Zero)
    }

    /// Jets at `x` of the analytic piece containing `probe`.
    pub fn jet_at(&self, x: Vec2, probe: Vec2) -> TensorJet {
        match self {
            TensorField::Zero => TensorJet::zero(),
            TensorField::Constant(m) => TensorJet::constant(m),
            TensorField::RadialDyadOutside { center, r0, coefficient } => {
                if (probe - center).norm() < *r0 {
                    return TensorJet::zero();
                }
                let (x1, x2) = Jet::coords(x);
                let d1 = x1 - center.x;
                let d2 = x2 - center.y;
                let inv = (d1 * d1 + d2 * d2).recip() * *coefficient;
                TensorJet([d1 * d1 * inv, d1 * d2 * inv, d2 * d2 * inv])
            }
            TensorField::HalfPlane { point, normal, positive, negative } => {
                if (probe - point).dot(normal) >= 0.0 {
                    TensorJet::constant(positive)
                } else {
                    TensorJet::constant(negative)
                }
            }
            TensorField::IsotropicLog { origin, coefficient } => {
                let (x1, x2) = Jet::coords(x);
                let d1 = x1 - origin.x;
                let d2 = x2 - origin.y;
                let f = (d1 * d1 + d2 * d2).ln() * (0.5 * coefficient);
                TensorJet([f, Jet::zero(), f])
            }
            TensorField::Polynomial(p) => TensorJet([p[0].jet(x), p[1].jet(x), p[2].jet(x)]),
        }
    }
}
