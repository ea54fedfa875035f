//! Weak pairings against bumps, and the matching strong forms.

use super::quad::{integrate_interface, integrate_support, QuadOptions, QuadResult};
use super::{curlcurl_interfacial, TensorSource};
use crate::error::Result;
use crate::fields::FieldBundle;
use crate::numerics::{make_bump, TestFunction};
use crate::tensor::{apply_a, inner, Mat2, Vec2};
use std::cell::RefCell;

/// ⟨Curl Curl A, ψ⟩ = ∫ ⟨a, 𝔸∇∇ψ⟩ da + Σ_S ∫ ⟨a_S, 𝔸∇∇ψ⟩ dl, with bulk density
/// `a` and an optional tensor line density `line(interface, s)`.
pub fn weak_pair_curlcurl(
    bundle: &FieldBundle,
    a: &dyn Fn(Vec2) -> Mat2,
    line: Option<&dyn Fn(usize, f64) -> Mat2>,
    psi: &TestFunction,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let f = |x: Vec2| {
        if !psi.contains(x) {
            return 0.0;
        }
        inner(&a(x), &apply_a(&psi.hess(x)))
    };
    let mut r = integrate_support(bundle, psi, &f, opts)?;
    if let Some(line) = line {
        for i in 0..bundle.interfaces.len() {
            let iface = &bundle.interfaces[i];
            let g = |s: f64| inner(&line(i, s), &apply_a(&psi.hess(iface.point(s))));
            let q = integrate_interface(bundle, i, psi, &g, opts)?;
            r.value += q.value;
            r.estimate += q.estimate;
            r.magnitude += q.magnitude;
        }
    }
    Ok(r)
}

/// Strong form of the same pairing for a piecewise-smooth bulk tensor:
/// ∫ curl curl a ψ da + Σ_S ∫ (monopole ψ + dipole ∂ψ/∂ν) dl + c_O ψ(O).
pub fn strong_pair_curlcurl(
    bundle: &FieldBundle,
    a: TensorSource,
    psi: &TestFunction,
    point_coefficient: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let f = |x: Vec2| {
        if !psi.contains(x) {
            return 0.0;
        }
        a(x, x).curl_curl() * psi.value(x)
    };
    let mut r = integrate_support(bundle, psi, &f, opts)?;
    for i in 0..bundle.interfaces.len() {
        let iface = &bundle.interfaces[i];
        let err = RefCell::new(None);
        let g = |s: f64| match curlcurl_interfacial(bundle, a, i, s) {
            Ok(d) => {
                let x = iface.point(s);
                d.monopole * psi.value(x) + d.dipole * psi.grad(x).dot(&iface.normal(s))
            }
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        };
        let q = integrate_interface(bundle, i, psi, &g, opts);
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        let q = q?;
        r.value += q.value;
        r.estimate += q.estimate;
        r.magnitude += q.magnitude;
    }
    if let Some(o) = bundle.origin {
        r.value += point_coefficient * psi.value(o);
    }
    Ok(r)
}

/// Point part of a distribution of degree ≤ 1 at O: T(ψ) = c₀ψ(O) + ⟨d, ∇ψ(O)⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracComponents {
    pub dirac: f64,
    pub dipole: Vec2,
}

impl DiracComponents {
    /// |d| / |c₀| (infinite when c₀ = 0 and d ≠ 0)
    pub fn dipole_ratio(&self) -> f64 {
        let d = self.dipole.norm();
        if d == 0.0 {
            0.0
        } else {
            d / self.dirac.abs()
        }
    }
}

/// Pair with a bump centered at O and with its first-moment-weighted versions.
/// Only point-supported distributions are separated cleanly this way.
pub fn dirac_components(pairing: &dyn Fn(&TestFunction) -> Result<f64>, center: Vec2, radius: f64) -> Result<DiracComponents> {
    let psi = make_bump(center, radius);
    let dirac = pairing(&psi)?;
    let d1 = pairing(&psi.with_weight(1, 0))?;
    let d2 = pairing(&psi.with_weight(0, 1))?;
    Ok(DiracComponents { dirac, dipole: Vec2::new(d1, d2) })
}
