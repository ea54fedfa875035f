//! Planar vectors and second/third-order tensors.

use nalgebra::{Matrix2, Vector2};

pub type Vec2 = Vector2<f64>;
pub type Mat2 = Matrix2<f64>;
/// Gradient of a tensor field, stored as [∂₁a, ∂₂a] (derivative index last).
pub type Grad3 = [Mat2; 2];

pub fn vec2(x: f64, y: f64) -> Vec2 {
    Vec2::new(x, y)
}

/// e₃ × v = (−v₂, v₁): rotation by +π/2.
pub fn rot90(v: Vec2) -> Vec2 {
    Vec2::new(-v.y, v.x)
}

/// Rotation by −π/2, so that t = rot_neg90(ν).
pub fn rot_neg90(v: Vec2) -> Vec2 {
    Vec2::new(v.y, -v.x)
}

pub fn outer(a: Vec2, b: Vec2) -> Mat2 {
    a * b.transpose()
}

pub fn sym(a: Mat2) -> Mat2 {
    0.5 * (a + a.transpose())
}

/// ⟨A, B⟩ = A_ij B_ij.
pub fn inner(a: &Mat2, b: &Mat2) -> f64 {
    a.component_mul(b).sum()
}

/// Quadratic form ⟨a, u⊗v⟩ = uᵀ a v.
pub fn form(a: &Mat2, u: Vec2, v: Vec2) -> f64 {
    u.dot(&(a * v))
}

/// (𝔸T)_ij = ε_ik ε_jl T_kl, i.e. 𝔸(v⊗w) = (e₃×v)⊗(e₃×w).
pub fn apply_a(t: &Mat2) -> Mat2 {
    Mat2::new(t[(1, 1)], -t[(1, 0)], -t[(0, 1)], t[(0, 0)])
}

/// Directional derivative Σ_l d_l ∂_l a.
pub fn directional(g: &Grad3, d: Vec2) -> Mat2 {
    g[0] * d.x + g[1] * d.y
}

/// ⟨∇a, r⟩ with r = t⊗ν⊗t − t⊗t⊗ν + ν⊗t⊗t.
pub fn contract_r(g: &Grad3, t: Vec2, nu: Vec2) -> f64 {
    let dt = directional(g, t);
    let dn = directional(g, nu);
    form(&dt, t, nu) + form(&dt, nu, t) - form(&dn, t, t)
}

/// s = ν⊗ν − t⊗t.
pub fn s_tensor(t: Vec2, nu: Vec2) -> Mat2 {
    outer(nu, nu) - outer(t, t)
}

/// Row-wise divergence (div a)_i = a_ij,j.
pub fn div3(g: &Grad3) -> Vec2 {
    Vec2::new(g[0][(0, 0)] + g[1][(0, 1)], g[0][(1, 0)] + g[1][(1, 1)])
}

/// Row-wise curl (curl a)_i = a_i2,1 − a_i1,2.
pub fn curl3(g: &Grad3) -> Vec2 {
    Vec2::new(g[0][(0, 1)] - g[1][(0, 0)], g[0][(1, 1)] - g[1][(1, 0)])
}

pub fn scale3(g: &Grad3, s: f64) -> Grad3 {
    [g[0] * s, g[1] * s]
}

/// A value sampled from a field: scalar, vector, tensor, or tensor gradient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Value {
    Scalar(f64),
    Vector(Vec2),
    Tensor(Mat2),
    Third(Grad3),
}

impl Value {
    pub fn zero_like(&self) -> Value {
        self.scale(0.0)
    }

    pub fn scale(&self, s: f64) -> Value {
        match self {
            Value::Scalar(a) => Value::Scalar(a * s),
            Value::Vector(a) => Value::Vector(a * s),
            Value::Tensor(a) => Value::Tensor(a * s),
            Value::Third(a) => Value::Third(scale3(a, s)),
        }
    }

    /// a·x + b·y for values of the same kind.
    pub fn lincomb(a: f64, x: &Value, b: f64, y: &Value) -> Value {
        match (x, y) {
            (Value::Scalar(p), Value::Scalar(q)) => Value::Scalar(a * p + b * q),
            (Value::Vector(p), Value::Vector(q)) => Value::Vector(p * a + q * b),
            (Value::Tensor(p), Value::Tensor(q)) => Value::Tensor(p * a + q * b),
            (Value::Third(p), Value::Third(q)) => Value::Third([p[0] * a + q[0] * b, p[1] * a + q[1] * b]),
            _ => panic!("mixed value kinds"),
        }
    }

    pub fn norm(&self) -> f64 {
        match self {
            Value::Scalar(a) => a.abs(),
            Value::Vector(a) => a.norm(),
            Value::Tensor(a) => a.norm(),
            Value::Third(a) => (a[0].norm_squared() + a[1].norm_squared()).sqrt(),
        }
    }

    pub fn scalar(&self) -> f64 {
        match self {
            Value::Scalar(a) => *a,
            _ => panic!("expected scalar, got {self:?}"),
        }
    }

    pub fn vector(&self) -> Vec2 {
        match self {
            Value::Vector(a) => *a,
            _ => panic!("expected vector, got {self:?}"),
        }
    }

    pub fn tensor(&self) -> Mat2 {
        match self {
            Value::Tensor(a) => *a,
            _ => panic!("expected tensor, got {self:?}"),
        }
    }

    pub fn third(&self) -> Grad3 {
        match self {
            Value::Third(a) => *a,
            _ => panic!("expected third-order tensor, got {self:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn apply_a_examples() {
        assert_eq!(apply_a(&Mat2::identity()), Mat2::identity());
        let e1 = vec2(1.0, 0.0);
        let e2 = vec2(0.0, 1.0);
        assert_eq!(apply_a(&outer(e1, e1)), outer(e2, e2));
    }

    #[test]
    fn orientation_identities() {
        let nu = vec2(0.6, 0.8);
        let t = rot_neg90(nu);
        assert_relative_eq!(rot90(t), nu);
        // e3 × t = ν and e3 × ν = −t
        assert_relative_eq!(rot90(nu), -t);
    }

    #[test]
    fn contract_r_matches_index_sum() {
        let g: Grad3 = [Mat2::new(1.0, 2.0, 3.0, 4.0), Mat2::new(-1.0, 0.5, 0.25, 2.0)];
        let nu = vec2(0.28, 0.96);
        let t = rot_neg90(nu);
        let mut direct = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                for l in 0..2 {
                    let r = t[i] * nu[j] * t[l] - t[i] * t[j] * nu[l] + nu[i] * t[j] * t[l];
                    direct += g[l][(i, j)] * r;
                }
            }
        }
        assert_relative_eq!(contract_r(&g, t, nu), direct, epsilon = 1e-14);
    }

    proptest! {
        #[test]
        fn apply_a_involution(a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64) {
            let t = Mat2::new(a, b, b, c);
            let at = apply_a(&t);
            prop_assert!((at - at.transpose()).norm() == 0.0);
            prop_assert!((apply_a(&at) - t).norm() < 1e-15);
        }

        #[test]
        fn apply_a_on_dyads(v1 in -3.0..3.0f64, v2 in -3.0..3.0f64, w1 in -3.0..3.0f64, w2 in -3.0..3.0f64) {
            let v = vec2(v1, v2);
            let w = vec2(w1, w2);
            prop_assert!((apply_a(&outer(v, w)) - outer(rot90(v), rot90(w))).norm() < 1e-12);
        }
    }
}
