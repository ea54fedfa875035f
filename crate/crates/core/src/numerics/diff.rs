use crate::error::{Result, VkError};

fn central<F: Fn(f64) -> Result<f64>>(f: &F, x: f64, order: usize, h: f64) -> Result<f64> {
    let ev = |t: f64| -> Result<f64> {
        let v = f(t).map_err(|e| VkError::Stencil { x: t, source_msg: e.to_string() })?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(VkError::Stencil { x: t, source_msg: "non-finite value".into() })
        }
    };
    Ok(match order {
        1 => (ev(x + h)? - ev(x - h)?) / (2.0 * h),
        2 => (ev(x + h)? - 2.0 * ev(x)? + ev(x - h)?) / (h * h),
        3 => (ev(x + 2.0 * h)? - 2.0 * ev(x + h)? + 2.0 * ev(x - h)? - ev(x - 2.0 * h)?) / (2.0 * h.powi(3)),
        4 => {
            (ev(x + 2.0 * h)? - 4.0 * ev(x + h)? + 6.0 * ev(x)? - 4.0 * ev(x - h)? + ev(x - 2.0 * h)?) / h.powi(4)
        }
        _ => return Err(VkError::Precondition(format!("derivative order {order} outside 1..=4"))),
    })
}

/// Central difference of the given order with one Richardson level (h, h/2).
pub fn fd_derivative<F: Fn(f64) -> Result<f64>>(f: F, x: f64, order: usize, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(VkError::Precondition(format!("step must be positive, got {h}")));
    }
    let d1 = central(&f, x, order, h)?;
    let d2 = central(&f, x, order, 0.5 * h)?;
    Ok((4.0 * d2 - d1) / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert!((fd_derivative(|x| Ok(x.powi(3)), 2.0, 2, 1e-2).unwrap() - 12.0).abs() < 1e-6);
        assert!((fd_derivative(|x: f64| Ok(x.sin()), 0.0, 1, 1e-2).unwrap() - 1.0).abs() < 1e-8);
        assert!((fd_derivative(|x: f64| Ok(x.ln()), 1.0, 4, 2e-2).unwrap() + 6.0).abs() < 1e-3);
    }

    #[test]
    fn richardson_is_fourth_order() {
        let f = |x: f64| Ok(x.exp());
        let e1 = (fd_derivative(f, 0.3, 1, 0.1).unwrap() - 0.3f64.exp()).abs();
        let e2 = (fd_derivative(f, 0.3, 1, 0.05).unwrap() - 0.3f64.exp()).abs();
        assert!(e1 / e2 > 12.0, "ratio {}", e1 / e2);
    }

    #[test]
    fn stencil_error_propagates() {
        let f = |x: f64| if x > 1.0 { Err(VkError::Geometry("excluded".into())) } else { Ok(x) };
        let e = fd_derivative(f, 0.99, 1, 0.1).unwrap_err();
        assert!(matches!(e, VkError::Stencil { .. }));
    }
}
