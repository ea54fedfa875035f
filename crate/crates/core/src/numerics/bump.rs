use super::jet::Jet;
use nalgebra::{Matrix2, Vector2};

/// Exponential mollifier ψ(x) = exp(1 − 1/(1 − t)), t = |x − c|²/ρ², optionally
/// multiplied by a monomial weight (x₁ − c₁)^a (x₂ − c₂)^b.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TestFunction {
    pub center: Vector2<f64>,
    pub radius: f64,
    pub weight: (u32, u32),
}

pub fn make_bump(center: Vector2<f64>, radius: f64) -> TestFunction {
    assert!(radius > 0.0, "bump radius must be positive");
    TestFunction { center, radius, weight: (0, 0) }
}

/// h(t) = exp(1 − 1/(1−t)) and its first four derivatives.
fn profile_derivs(t: f64) -> [f64; 5] {
    if t >= 1.0 {
        return [0.0; 5];
    }
    let u = 1.0 / (1.0 - t);
    let h = (1.0 - u).exp();
    let u2 = u * u;
    let u3 = u2 * u;
    let u4 = u2 * u2;
    let u5 = u4 * u;
    let u6 = u3 * u3;
    let u7 = u6 * u;
    let u8 = u4 * u4;
    [
        h,
        -u2 * h,
        (u4 - 2.0 * u3) * h,
        (-u6 + 6.0 * u5 - 6.0 * u4) * h,
        (u8 - 12.0 * u7 + 36.0 * u6 - 24.0 * u5) * h,
    ]
}

impl TestFunction {
    pub fn with_weight(mut self, a: u32, b: u32) -> Self {
        self.weight = (a, b);
        self
    }

    pub fn contains(&self, x: Vector2<f64>) -> bool {
        (x - self.center).norm() < self.radius
    }

    fn t(&self, x: Vector2<f64>) -> f64 {
        (x - self.center).norm_squared() / (self.radius * self.radius)
    }

    /// All partials through order 4 at x (chain rule over t, then the weight).
    pub fn jet(&self, x: Vector2<f64>) -> Jet {
        let t0 = self.t(x);
        if t0 >= 1.0 {
            return Jet::zero();
        }
        let (x1, x2) = Jet::coords(x);
        let d1 = x1 - self.center.x;
        let d2 = x2 - self.center.y;
        let t = (d1 * d1 + d2 * d2) * (1.0 / (self.radius * self.radius));
        let mut psi = t.compose(profile_derivs(t0));
        let (a, b) = self.weight;
        if a > 0 {
            psi = psi * d1.powi(a);
        }
        if b > 0 {
            psi = psi * d2.powi(b);
        }
        psi
    }

    pub fn value(&self, x: Vector2<f64>) -> f64 {
        let t = self.t(x);
        if t >= 1.0 {
            return 0.0;
        }
        let d = x - self.center;
        profile_derivs(t)[0] * d.x.powi(self.weight.0 as i32) * d.y.powi(self.weight.1 as i32)
    }

    pub fn grad(&self, x: Vector2<f64>) -> Vector2<f64> {
        if self.weight != (0, 0) {
            return self.jet(x).grad();
        }
        let t = self.t(x);
        if t >= 1.0 {
            return Vector2::zeros();
        }
        let h = profile_derivs(t);
        let r2 = self.radius * self.radius;
        (x - self.center) * (2.0 * h[1] / r2)
    }

    pub fn hess(&self, x: Vector2<f64>) -> Matrix2<f64> {
        if self.weight != (0, 0) {
            return self.jet(x).hess();
        }
        let t = self.t(x);
        if t >= 1.0 {
            return Matrix2::zeros();
        }
        let h = profile_derivs(t);
        let r2 = self.radius * self.radius;
        let d = x - self.center;
        let g = d * (2.0 / r2);
        g * g.transpose() * h[2] + Matrix2::identity() * (2.0 * h[1] / r2)
    }

    /// Value, gradient, and Hessian in one pass.
    pub fn second_order(&self, x: Vector2<f64>) -> (f64, Vector2<f64>, Matrix2<f64>) {
        if self.weight != (0, 0) {
            let j = self.jet(x);
            return (j.value(), j.grad(), j.hess());
        }
        let t = self.t(x);
        if t >= 1.0 {
            return (0.0, Vector2::zeros(), Matrix2::zeros());
        }
        let h = profile_derivs(t);
        let r2 = self.radius * self.radius;
        let g = (x - self.center) * (2.0 / r2);
        (h[0], g * h[1], g * g.transpose() * h[2] + Matrix2::identity() * (2.0 * h[1] / r2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::diff::fd_derivative;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn center_value_and_support() {
        let b = make_bump(Vector2::new(0.3, -0.2), 0.5);
        assert_eq!(b.value(b.center), 1.0);
        let edge = b.center + Vector2::new(0.5, 0.0);
        assert_eq!(b.value(edge), 0.0);
        let j = b.jet(edge);
        for a in 0..=4 {
            for c in 0..=(4 - a) {
                assert_eq!(j.partial(a, c), 0.0);
            }
        }
        // just inside the edge everything is tiny
        let near = b.center + Vector2::new(0.499, 0.0);
        assert!(b.jet(near).partial(4, 0).abs() < 1e-6);
    }

    #[test]
    fn fast_paths_match_jet() {
        let b = make_bump(Vector2::new(0.1, 0.2), 0.7);
        let x = Vector2::new(0.3, -0.1);
        let j = b.jet(x);
        assert_relative_eq!(b.value(x), j.value(), epsilon = 1e-15);
        assert_relative_eq!((b.grad(x) - j.grad()).norm(), 0.0, epsilon = 1e-14);
        assert_relative_eq!((b.hess(x) - j.hess()).norm(), 0.0, epsilon = 1e-13);
    }

    #[test]
    fn hessian_matches_fd_of_gradient() {
        let b = make_bump(Vector2::zeros(), 1.0);
        let x = Vector2::new(0.2, 0.35);
        let fd = fd_derivative(|s| Ok(b.grad(Vector2::new(s, x.y)).x), x.x, 1, 1e-3).unwrap();
        assert!((fd - b.hess(x)[(0, 0)]).abs() < 1e-6);
    }

    #[test]
    fn derivatives_match_nested_fd_at_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let b = make_bump(Vector2::new(0.5, 0.5), 0.8);
        for _ in 0..100 {
            let r = 0.75 * rng.gen::<f64>().sqrt();
            let th = rng.gen_range(-3.14..3.14f64);
            let x = b.center + Vector2::new(r * th.cos(), r * th.sin());
            let j = b.jet(x);
            let h = 1e-3;
            // third derivative ψ,112 from FD of the analytic ψ,12 in x1
            let fd3 = fd_derivative(|s| Ok(b.jet(Vector2::new(s, x.y)).partial(1, 1)), x.x, 1, h).unwrap();
            assert!((fd3 - j.partial(2, 1)).abs() < 1e-5 * (1.0 + fd3.abs()), "{fd3} vs {}", j.partial(2, 1));
            // fourth ψ,2222 from FD of ψ,22 in x2
            let fd4 = fd_derivative(|s| Ok(b.jet(Vector2::new(x.x, s)).partial(0, 2)), x.y, 2, h).unwrap();
            assert!((fd4 - j.partial(0, 4)).abs() < 1e-5 * (1.0 + fd4.abs()), "{fd4} vs {}", j.partial(0, 4));
            // mixed partial symmetry by FD
            let m1 = fd_derivative(|s| Ok(b.grad(Vector2::new(s, x.y)).y), x.x, 1, h).unwrap();
            let m2 = fd_derivative(|s| Ok(b.grad(Vector2::new(x.x, s)).x), x.y, 1, h).unwrap();
            assert!((m1 - m2).abs() < 1e-6);
        }
    }

    #[test]
    fn weighted_bump() {
        let b = make_bump(Vector2::zeros(), 1.0).with_weight(1, 0);
        let j = b.jet(Vector2::zeros());
        assert_eq!(j.value(), 0.0);
        assert_relative_eq!(j.grad().x, 1.0);
        assert_relative_eq!(j.grad().y, 0.0);
    }
}
