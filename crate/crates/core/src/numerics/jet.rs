//! Truncated bivariate Taylor polynomials (total degree 4).
//!
//! A `Jet` holds the Taylor coefficients of a function of (x1, x2) about a base
//! point. Closed-form field expressions evaluated on jets yield every partial
//! derivative through fourth order without finite differencing.

use nalgebra::{Matrix2, Vector2};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

pub const DEGREE: usize = 4;
pub const LEN: usize = 15;

const fn idx(a: usize, b: usize) -> usize {
    let d = a + b;
    d * (d + 1) / 2 + b
}

const fn product_table() -> [(u8, u8, u8); 70] {
    let mut out = [(0u8, 0u8, 0u8); 70];
    let mut n = 0;
    let mut d1 = 0;
    while d1 <= DEGREE {
        let mut b1 = 0;
        while b1 <= d1 {
            let mut d2 = 0;
            while d1 + d2 <= DEGREE {
                let mut b2 = 0;
                while b2 <= d2 {
                    let i = idx(d1 - b1, b1);
                    let j = idx(d2 - b2, b2);
                    let k = idx(d1 - b1 + d2 - b2, b1 + b2);
                    out[n] = (i as u8, j as u8, k as u8);
                    n += 1;
                    b2 += 1;
                }
                d2 += 1;
            }
            b1 += 1;
        }
        d1 += 1;
    }
    out
}

const PRODUCT: [(u8, u8, u8); 70] = product_table();
const FACT: [f64; 5] = [1.0, 1.0, 2.0, 6.0, 24.0];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    c: [f64; LEN],
}

impl Jet {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; LEN];
        c[0] = v;
        Jet { c }
    }

    pub fn zero() -> Self {
        Jet { c: [0.0; LEN] }
    }

    /// Independent variables x1, x2 expanded about `p`.
    pub fn coords(p: Vector2<f64>) -> (Jet, Jet) {
        let mut x = Jet::constant(p.x);
        let mut y = Jet::constant(p.y);
        x.c[idx(1, 0)] = 1.0;
        y.c[idx(0, 1)] = 1.0;
        (x, y)
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// ∂₁^a ∂₂^b at the base point.
    pub fn partial(&self, a: usize, b: usize) -> f64 {
        assert!(a + b <= DEGREE);
        FACT[a] * FACT[b] * self.c[idx(a, b)]
    }

    pub fn grad(&self) -> Vector2<f64> {
        Vector2::new(self.partial(1, 0), self.partial(0, 1))
    }

    pub fn hess(&self) -> Matrix2<f64> {
        let h12 = self.partial(1, 1);
        Matrix2::new(self.partial(2, 0), h12, h12, self.partial(0, 2))
    }

    /// Third derivatives arranged as [∂₁∇∇f, ∂₂∇∇f].
    pub fn third(&self) -> [Matrix2<f64>; 2] {
        let f111 = self.partial(3, 0);
        let f112 = self.partial(2, 1);
        let f122 = self.partial(1, 2);
        let f222 = self.partial(0, 3);
        [
            Matrix2::new(f111, f112, f112, f122),
            Matrix2::new(f112, f122, f122, f222),
        ]
    }

    pub fn laplacian(&self) -> f64 {
        self.partial(2, 0) + self.partial(0, 2)
    }

    /// ∇Δf, which equals div ∇∇f.
    pub fn grad_laplacian(&self) -> Vector2<f64> {
        Vector2::new(
            self.partial(3, 0) + self.partial(1, 2),
            self.partial(2, 1) + self.partial(0, 3),
        )
    }

    pub fn bilaplacian(&self) -> f64 {
        self.partial(4, 0) + 2.0 * self.partial(2, 2) + self.partial(0, 4)
    }

    /// ∂f/∂x₁ (var = 0) or ∂f/∂x₂ (var = 1); valid through total degree 3.
    pub fn diff(&self, var: usize) -> Jet {
        let mut c = [0.0; LEN];
        for d in 0..DEGREE {
            for b in 0..=d {
                let a = d - b;
                c[idx(a, b)] = if var == 0 {
                    (a + 1) as f64 * self.c[idx(a + 1, b)]
                } else {
                    (b + 1) as f64 * self.c[idx(a, b + 1)]
                };
            }
        }
        Jet { c }
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    /// f(self) given f and its first four derivatives at self.value().
    pub fn compose(&self, d: [f64; 5]) -> Jet {
        let mut delta = *self;
        delta.c[0] = 0.0;
        let mut out = Jet::constant(d[0]);
        let mut pow = delta;
        for (n, dn) in d.iter().enumerate().skip(1) {
            out += pow * (dn / FACT[n]);
            if n < DEGREE {
                pow = pow * delta;
            }
        }
        out
    }

    pub fn recip(&self) -> Jet {
        let v = self.c[0];
        let r = 1.0 / v;
        self.compose([r, -r * r, 2.0 * r.powi(3), -6.0 * r.powi(4), 24.0 * r.powi(5)])
    }

    pub fn sqrt(&self) -> Jet {
        self.powf(0.5)
    }

    pub fn powf(&self, p: f64) -> Jet {
        let v = self.c[0];
        let mut d = [0.0; 5];
        let mut coef = 1.0;
        for (n, dn) in d.iter_mut().enumerate() {
            *dn = coef * v.powf(p - n as f64);
            coef *= p - n as f64;
        }
        self.compose(d)
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut out = Jet::constant(1.0);
        for _ in 0..n {
            out = out * *self;
        }
        out
    }

    pub fn exp(&self) -> Jet {
        let e = self.c[0].exp();
        self.compose([e; 5])
    }

    pub fn ln(&self) -> Jet {
        let v = self.c[0];
        let r = 1.0 / v;
        self.compose([v.ln(), r, -r * r, 2.0 * r.powi(3), -6.0 * r.powi(4)])
    }

    pub fn sin(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.compose([s, c, -s, -c, s])
    }

    pub fn cos(&self) -> Jet {
        let (s, c) = self.c[0].sin_cos();
        self.compose([c, -s, -c, s, c])
    }

    pub fn atan(&self) -> Jet {
        let u = self.c[0];
        let q = 1.0 / (1.0 + u * u);
        let d1 = q;
        let d2 = -2.0 * u * q * q;
        let d3 = (6.0 * u * u - 2.0) * q.powi(3);
        let d4 = 24.0 * u * (1.0 - u * u) * q.powi(4);
        self.compose([u.atan(), d1, d2, d3, d4])
    }
}

/// Polar coordinates (r, θ) of `p − origin` as jets. `theta0` selects the
/// branch of θ at the base point; it must agree with atan2 modulo 2π.
pub fn polar(p: Vector2<f64>, origin: Vector2<f64>, theta0: f64) -> (Jet, Jet) {
    let (x, y) = Jet::coords(p);
    let dx = x - origin.x;
    let dy = y - origin.y;
    let r = (dx * dx + dy * dy).sqrt();
    // θ = θ0 + atan(cross/dot) with (a, b) the base offset.
    let a = p.x - origin.x;
    let b = p.y - origin.y;
    let cross = dy * a - dx * b;
    let dot = dx * a + dy * b;
    let theta = (cross * dot.recip()).atan() + theta0;
    (r, theta)
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, o: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(o.c.iter()) {
            *a += b;
        }
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, o: Jet) {
        *self = *self + o;
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, o: Jet) -> Jet {
        for (a, b) in self.c.iter_mut().zip(o.c.iter()) {
            *a -= b;
        }
        self
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(mut self) -> Jet {
        for a in self.c.iter_mut() {
            *a = -*a;
        }
        self
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        let mut c = [0.0; LEN];
        for &(i, j, k) in PRODUCT.iter() {
            c[k as usize] += self.c[i as usize] * o.c[j as usize];
        }
        Jet { c }
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(mut self, s: f64) -> Jet {
        for a in self.c.iter_mut() {
            *a *= s;
        }
        self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, j: Jet) -> Jet {
        j * self
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, s: f64) -> Jet {
        self.c[0] += s;
        self
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(mut self, s: f64) -> Jet {
        self.c[0] -= s;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_partials_exact() {
        let p = Vector2::new(1.5, -0.5);
        let (x, y) = Jet::coords(p);
        // f = x^3 y + y^4
        let f = x * x * x * y + y.powi(4);
        assert_relative_eq!(f.partial(3, 1), 6.0);
        assert_relative_eq!(f.partial(0, 4), 24.0);
        assert_relative_eq!(f.partial(2, 1), 6.0 * p.x);
        assert_relative_eq!(f.partial(1, 1), 3.0 * p.x * p.x);
        assert_relative_eq!(f.partial(2, 2), 0.0);
    }

    #[test]
    fn exp_of_sum_matches_product() {
        let (x, y) = Jet::coords(Vector2::new(0.3, 0.7));
        let a = (x + y).exp();
        let b = x.exp() * y.exp();
        for i in 0..LEN {
            assert_relative_eq!(a.c[i], b.c[i], epsilon = 1e-14);
        }
    }

    #[test]
    fn polar_angle_derivatives() {
        // θ = atan2(y, x): θ_x = −y/r², θ_y = x/r²
        let p = Vector2::new(-0.6, 0.8);
        let (r, th) = polar(p, Vector2::zeros(), p.y.atan2(p.x));
        assert_relative_eq!(r.value(), 1.0, epsilon = 1e-15);
        assert_relative_eq!(th.partial(1, 0), -0.8, epsilon = 1e-14);
        assert_relative_eq!(th.partial(0, 1), -0.6, epsilon = 1e-14);
        // θ is harmonic
        assert!(th.laplacian().abs() < 1e-13);
        assert!(th.bilaplacian().abs() < 1e-11);
        // ln r is harmonic
        assert!(r.ln().laplacian().abs() < 1e-13);
    }

    #[test]
    fn diff_shifts_partials() {
        let (x, y) = Jet::coords(Vector2::new(0.4, -0.3));
        let f = (x * y).exp() + x.powi(3);
        let fx = f.diff(0);
        let fy = f.diff(1);
        for a in 0..=3 {
            for b in 0..=(3 - a) {
                assert_relative_eq!(fx.partial(a, b), f.partial(a + 1, b), epsilon = 1e-13);
                assert_relative_eq!(fy.partial(a, b), f.partial(a, b + 1), epsilon = 1e-13);
            }
        }
    }

    #[test]
    fn trig_identity() {
        let (x, y) = Jet::coords(Vector2::new(0.2, 1.1));
        let u = x * y + x;
        let one = u.sin() * u.sin() + u.cos() * u.cos();
        assert_relative_eq!(one.value(), 1.0, epsilon = 1e-15);
        for i in 1..LEN {
            assert!(one.c[i].abs() < 1e-13);
        }
    }
}
