use crate::error::{Result, VkError};

/// Hybrid secant/bisection root finder on a sign-changing bracket.
///
/// Every iteration at least halves the bracket: a secant step is accepted only
/// when it does, otherwise the midpoint is used as well.
pub fn find_root_bracketed<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(VkError::Precondition(format!("tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = if lo < hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa * fb < 0.0) {
        return Err(VkError::Bracket { lo: a, hi: b, flo: fa, fhi: fb });
    }
    let floor = 1e3 * f64::EPSILON * fa.abs().max(fb.abs());
    for _ in 0..200 {
        let width = b - a;
        // secant candidate
        let xs = b - fb * (b - a) / (fb - fa);
        let x = if xs > a && xs < b { xs } else { 0.5 * (a + b) };
        let fx = f(x);
        if !fx.is_finite() {
            return Err(VkError::Evaluation { what: "root function".into(), at: format!("x = {x}") });
        }
        if fx == 0.0 {
            return Ok(x);
        }
        if fa * fx < 0.0 {
            b = x;
            fb = fx;
        } else {
            a = x;
            fa = fx;
        }
        if b - a > 0.5 * width {
            let m = 0.5 * (a + b);
            let fm = f(m);
            if fm == 0.0 {
                return Ok(m);
            }
            if fa * fm < 0.0 {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
        }
        let best = if fa.abs() < fb.abs() { (a, fa) } else { (b, fb) };
        if b - a <= tol && best.1.abs() <= floor.max(tol) {
            return Ok(best.0);
        }
        if b - a <= f64::EPSILON * best.0.abs().max(1.0) {
            return Ok(best.0);
        }
    }
    Err(VkError::Convergence { what: "bracketed root".into(), detail: format!("bracket [{a}, {b}]") })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn examples() {
        assert_relative_eq!(find_root_bracketed(|m| m - 0.5, 0.0, 1.0, 1e-12).unwrap(), 0.5, epsilon = 1e-12);
        assert_relative_eq!(find_root_bracketed(f64::sin, 3.0, 3.5, 1e-13).unwrap(), PI, epsilon = 1e-12);
        let ridge = |m: f64| (1.0 + m * m) * (2.0 * PI * m).sin() + 2.0 * PI * (1.0 - m * m) * m;
        let mu = find_root_bracketed(ridge, 0.5, 0.99, 1e-12).unwrap();
        assert!((mu - 0.92).abs() < 0.005, "mu = {mu}");
    }

    #[test]
    fn no_sign_change() {
        let e = find_root_bracketed(|x| x * x + 1.0, -1.0, 1.0, 1e-8).unwrap_err();
        assert!(matches!(e, VkError::Bracket { .. }));
    }

    #[test]
    fn bracket_halves_each_iteration() {
        // a function where pure secant stalls on one side
        let calls = std::cell::Cell::new(0usize);
        let f = |x: f64| {
            calls.set(calls.get() + 1);
            (x - 0.3).powi(3) + 1e-3 * (x - 0.3)
        };
        let r = find_root_bracketed(f, -10.0, 10.0, 1e-12).unwrap();
        assert!((r - 0.3).abs() < 1e-10);
        // 20 units down to 1e-12 needs ~45 halvings; two evaluations per iteration at most
        assert!(calls.get() < 2 * 50 + 2);
    }
}
