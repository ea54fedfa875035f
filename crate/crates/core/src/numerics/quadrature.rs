use crate::error::{Result, VkError};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Composite trapezoid rule over one period, samples at θ_k = −π + 2πk/n.
pub fn integrate_periodic<F: Fn(f64) -> f64>(f: F, n: usize) -> Result<f64> {
    if n < 8 {
        return Err(VkError::Precondition(format!("periodic rule needs n >= 8, got {n}")));
    }
    let h = 2.0 * PI / n as f64;
    let mut sum = 0.0;
    for k in 0..n {
        let th = -PI + h * k as f64;
        let v = f(th);
        if !v.is_finite() {
            return Err(VkError::Evaluation { what: "periodic integrand".into(), at: format!("theta = {th}") });
        }
        sum += v;
    }
    Ok(sum * h)
}

/// Gauss-Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(order: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static TABLE: OnceLock<Vec<(Vec<f64>, Vec<f64>)>> = OnceLock::new();
    let table = TABLE.get_or_init(|| (0..=64).map(compute_gauss_legendre).collect());
    &table[order]
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    if n == 0 {
        return (vec![], vec![]);
    }
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Composite Gauss-Legendre rule with `panels` equal panels.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> Result<f64> {
    if !(a < b) {
        return Err(VkError::Precondition(format!("interval [{a}, {b}] is empty")));
    }
    if !(2..=10).contains(&order) {
        return Err(VkError::Precondition(format!("Gauss order {order} outside 2..=10")));
    }
    gauss_composite(f, a, b, panels.max(1), order)
}

/// Same as `integrate_interval` without the order restriction; used internally
/// for line and loop quadrature.
pub(crate) fn gauss_composite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, order: usize) -> Result<f64> {
    let (x, w) = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut sum = 0.0;
    for p in 0..panels {
        let lo = a + h * p as f64;
        let mid = lo + 0.5 * h;
        for (xi, wi) in x.iter().zip(w.iter()) {
            let t = mid + 0.5 * h * xi;
            let v = f(t);
            if !v.is_finite() {
                return Err(VkError::Evaluation { what: "interval integrand".into(), at: format!("x = {t}") });
            }
            sum += wi * v;
        }
    }
    Ok(sum * 0.5 * h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn periodic_examples() {
        assert_relative_eq!(integrate_periodic(|_| 1.0, 64).unwrap(), 2.0 * PI, epsilon = 1e-13);
        assert_relative_eq!(integrate_periodic(|t: f64| t.sin().powi(2), 64).unwrap(), PI, epsilon = 1e-13);
        assert!(integrate_periodic(|t: f64| (3.0 * t).cos(), 64).unwrap().abs() < 1e-13);
    }

    #[test]
    fn periodic_rejects_small_n_and_nan() {
        assert!(integrate_periodic(|_| 1.0, 4).is_err());
        let e = integrate_periodic(|t| if t > 0.0 { f64::NAN } else { 0.0 }, 16).unwrap_err();
        assert!(matches!(e, VkError::Evaluation { .. }));
    }

    #[test]
    fn interval_examples() {
        assert_relative_eq!(integrate_interval(|x| x * x, 0.0, 1.0, 1, 3).unwrap(), 1.0 / 3.0, epsilon = 1e-15);
        assert_relative_eq!(integrate_interval(|_| 1.0, -2.0, 5.0, 3, 2).unwrap(), 7.0, epsilon = 1e-14);
        let v = integrate_interval(f64::exp, 0.0, 1.0, 8, 5).unwrap();
        assert!((v - (1f64.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn gauss_exactness_all_orders() {
        for order in 2..=10 {
            let deg = 2 * order - 1;
            let v = integrate_interval(|x| x.powi(deg as i32) + 1.0, 0.0, 1.0, 1, order).unwrap();
            assert_relative_eq!(v, 1.0 / (deg as f64 + 1.0) + 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn interval_preconditions() {
        assert!(integrate_interval(|x| x, 1.0, 1.0, 1, 3).is_err());
        assert!(integrate_interval(|x| x, 0.0, 1.0, 1, 11).is_err());
    }
}
