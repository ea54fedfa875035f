use super::interface::InterfaceSpec;
use super::scalar::{Poly2, ScalarField};
use super::tensor_field::{TensorField, TensorJet};
use crate::error::{Result, VkError};
use crate::numerics::Jet;
use crate::tensor::{apply_a, Grad3, Mat2, Value, Vec2};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Material {
    /// stretching modulus
    pub e: f64,
    /// bending modulus
    pub d: f64,
    /// Poisson ratio
    pub nu: f64,
}

impl Material {
    pub fn new(e: f64, d: f64, nu: f64) -> Result<Self> {
        if !(e > 0.0) || !(d > 0.0) || !(nu > -1.0 && nu < 0.5) {
            return Err(VkError::Precondition(format!("invalid material E = {e}, D = {d}, nu = {nu}")));
        }
        Ok(Material { e, d, nu })
    }
}

/// Declared bounds on the degrees of ∇W, ∇W⊗∇W and ∇Φ⊗∇W at O.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeclaredDegrees {
    pub grad_w: i32,
    pub grad_w_sq: i32,
    pub grad_phi_grad_w: i32,
}

impl Default for DeclaredDegrees {
    fn default() -> Self {
        // conical w, logarithmic φ: ∇w bounded, ∇φ ~ 1/r
        DeclaredDegrees { grad_w: -2, grad_w_sq: -2, grad_phi_grad_w: -1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Ω⁺, opposite to ν
    Plus,
    /// Ω⁻, the side ν points into
    Minus,
}

/// Selector for sampled quantities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    W,
    GradW,
    HessW,
    /// ∇∇∇w
    Grad3W,
    LapW,
    /// div ∇∇w = ∇Δw
    DivHessW,
    Phi,
    GradPhi,
    HessPhi,
    Grad3Phi,
    DivHessPhi,
    /// e^p
    PlasticStretch,
    GradPlasticStretch,
    /// bulk λ^p
    PlasticBend,
    GradPlasticBend,
    /// stretching strain e (see `FieldBundle::stretch_jet`)
    Stretch,
    GradStretch,
    /// σ = 𝔸∇∇φ
    Stress,
    /// m = D((1−ν)λᵉ + ν tr λᵉ I), λᵉ = ∇∇w − λ^p
    Moment,
    DivMoment,
    /// ∇w⊗∇w
    GradWSq,
    GradGradWSq,
}

/// A complete plate state.
#[derive(Clone, Debug)]
pub struct FieldBundle {
    pub material: Material,
    /// elastic inextensibility: e^e = 0 and 1/E terms are not evaluated
    pub inextensible: bool,
    pub w: ScalarField,
    pub phi: ScalarField,
    /// in-plane displacement components, zero when absent
    pub u: Option<[Poly2; 2]>,
    pub interfaces: Vec<InterfaceSpec>,
    pub origin: Option<Vec2>,
    pub plastic_stretch: TensorField,
    pub plastic_bend: TensorField,
    /// bulk transverse force f₁ (uniform)
    pub bulk_force: f64,
    /// point force f₀ at O
    pub point_force: f64,
    /// point dipole f⃗₁ at O
    pub point_dipole: Vec2,
    pub degrees: DeclaredDegrees,
    /// exclusion radius around S and O
    pub exclusion: f64,
    /// domain radius used for probes and offsets
    pub scale: f64,
}

impl FieldBundle {
    pub fn new(material: Material, w: ScalarField) -> Self {
        FieldBundle {
            material,
            inextensible: false,
            w,
            phi: ScalarField::Zero,
            u: None,
            interfaces: vec![],
            origin: None,
            plastic_stretch: TensorField::Zero,
            plastic_bend: TensorField::Zero,
            bulk_force: 0.0,
            point_force: 0.0,
            point_dipole: Vec2::zeros(),
            degrees: DeclaredDegrees::default(),
            exclusion: 1e-6,
            scale: 1.0,
        }
    }

    /// Fails when x is within the exclusion radius of O or of an interface.
    pub fn check_bulk(&self, x: Vec2) -> Result<()> {
        if let Some(o) = self.origin {
            let d = (x - o).norm();
            if d <= self.exclusion {
                return Err(VkError::Proximity { set: "singular point O".into(), x: x.x, y: x.y, distance: d });
            }
        }
        for s in &self.interfaces {
            let d = s.distance(x);
            if d <= self.exclusion {
                return Err(VkError::Proximity { set: format!("interface {}", s.label), x: x.x, y: x.y, distance: d });
            }
        }
        Ok(())
    }

    pub fn w_jet(&self, x: Vec2, probe: Vec2) -> Jet {
        self.w.jet_at(x, probe)
    }

    pub fn phi_jet(&self, x: Vec2, probe: Vec2) -> Jet {
        self.phi.jet_at(x, probe)
    }

    /// ∇w⊗∇w as tensor jets (valid through first derivatives of the dyad and beyond to degree 3).
    pub fn grad_w_sq_jet(&self, x: Vec2, probe: Vec2) -> TensorJet {
        let w = self.w_jet(x, probe);
        let g = [w.diff(0), w.diff(1)];
        TensorJet::dyad(g, g)
    }

    /// Stretching strain. When e^e = 0 is imposed and e^p is prescribed, e = e^p;
    /// otherwise e = sym∇u + ½∇w⊗∇w.
    pub fn stretch_jet(&self, x: Vec2, probe: Vec2) -> TensorJet {
        if self.inextensible && !self.plastic_stretch.is_zero() {
            return self.plastic_stretch.jet_at(x, probe);
        }
        let mut e = self.grad_w_sq_jet(x, probe).scale(0.5);
        if let Some([u1, u2]) = &self.u {
            let a = u1.jet(x);
            let b = u2.jet(x);
            let su = TensorJet([a.diff(0), (a.diff(1) + b.diff(0)) * 0.5, b.diff(1)]);
            e = e.add(&su);
        }
        e
    }

    /// Bulk moment m = D((1−ν)λᵉ + ν tr λᵉ I) as tensor jets.
    pub fn moment_jet(&self, x: Vec2, probe: Vec2) -> TensorJet {
        let w = self.w_jet(x, probe);
        let lp = self.plastic_bend.jet_at(x, probe);
        let l11 = w.diff(0).diff(0) - lp.0[0];
        let l12 = w.diff(0).diff(1) - lp.0[1];
        let l22 = w.diff(1).diff(1) - lp.0[2];
        let d = self.material.d;
        let nu = self.material.nu;
        let tr = l11 + l22;
        TensorJet([
            (l11 * (1.0 - nu) + tr * nu) * d,
            l12 * ((1.0 - nu) * d),
            (l22 * (1.0 - nu) + tr * nu) * d,
        ])
    }

    /// Sample a quantity at x using the analytic pieces that contain `probe`.
    pub fn sample_at(&self, q: Quantity, x: Vec2, probe: Vec2) -> Value {
        use Quantity::*;
        match q {
            W => Value::Scalar(self.w_jet(x, probe).value()),
            GradW => Value::Vector(self.w_jet(x, probe).grad()),
            HessW => Value::Tensor(self.w_jet(x, probe).hess()),
            Grad3W => Value::Third(self.w_jet(x, probe).third()),
            LapW => Value::Scalar(self.w_jet(x, probe).laplacian()),
            DivHessW => Value::Vector(self.w_jet(x, probe).grad_laplacian()),
            Phi => Value::Scalar(self.phi_jet(x, probe).value()),
            GradPhi => Value::Vector(self.phi_jet(x, probe).grad()),
            HessPhi => Value::Tensor(self.phi_jet(x, probe).hess()),
            Grad3Phi => Value::Third(self.phi_jet(x, probe).third()),
            DivHessPhi => Value::Vector(self.phi_jet(x, probe).grad_laplacian()),
            PlasticStretch => Value::Tensor(self.plastic_stretch.jet_at(x, probe).value()),
            GradPlasticStretch => Value::Third(self.plastic_stretch.jet_at(x, probe).grad()),
            PlasticBend => Value::Tensor(self.plastic_bend.jet_at(x, probe).value()),
            GradPlasticBend => Value::Third(self.plastic_bend.jet_at(x, probe).grad()),
            Stretch => Value::Tensor(self.stretch_jet(x, probe).value()),
            GradStretch => Value::Third(self.stretch_jet(x, probe).grad()),
            Stress => Value::Tensor(apply_a(&self.phi_jet(x, probe).hess())),
            Moment => Value::Tensor(self.moment_jet(x, probe).value()),
            DivMoment => Value::Vector(crate::tensor::div3(&self.moment_jet(x, probe).grad())),
            GradWSq => Value::Tensor(self.grad_w_sq_jet(x, probe).value()),
            GradGradWSq => Value::Third(self.grad_w_sq_jet(x, probe).grad()),
        }
    }

    /// Bulk sample with the proximity check.
    pub fn sample(&self, q: Quantity, x: Vec2) -> Result<Value> {
        self.check_bulk(x)?;
        let v = self.sample_at(q, x, x);
        if !value_finite(&v) {
            return Err(VkError::Evaluation { what: format!("{q:?}"), at: format!("({}, {})", x.x, x.y) });
        }
        Ok(v)
    }

    fn classification_offset(&self) -> f64 {
        1e-8 * self.scale
    }

    /// Probe point selecting the given side of interface `i` at arclength s.
    pub fn side_probe(&self, i: usize, s: f64, side: Side) -> (Vec2, Vec2) {
        let iface = &self.interfaces[i];
        let x = iface.point(s);
        let nu = iface.normal(s);
        let d = self.classification_offset();
        let probe = match side {
            Side::Plus => x - nu * d,
            Side::Minus => x + nu * d,
        };
        (x, probe)
    }

    /// Exact one-sided trace: the analytic piece on `side`, evaluated on S.
    pub fn one_sided(&self, q: Quantity, i: usize, s: f64, side: Side) -> Result<Value> {
        self.check_station(i, s)?;
        let (x, probe) = self.side_probe(i, s, side);
        let v = self.sample_at(q, x, probe);
        if !value_finite(&v) {
            return Err(VkError::Evaluation { what: format!("trace of {q:?}"), at: format!("s = {s}") });
        }
        Ok(v)
    }

    /// Evaluate `f(x, probe)` at the point of interface `i` at arclength s,
    /// using the analytic pieces of the given side.
    pub fn sided_eval<T>(&self, i: usize, s: f64, side: Side, f: impl Fn(Vec2, Vec2) -> T) -> Result<T> {
        self.check_station(i, s)?;
        let (x, probe) = self.side_probe(i, s, side);
        Ok(f(x, probe))
    }

    pub(crate) fn check_station(&self, i: usize, s: f64) -> Result<()> {
        let iface = self.interfaces.get(i).ok_or_else(|| VkError::Geometry(format!("no interface {i}")))?;
        if let Some(o) = self.origin {
            let d = (iface.point(s) - o).norm();
            if d <= self.exclusion {
                return Err(VkError::Proximity { set: "singular point O".into(), x: iface.point(s).x, y: iface.point(s).y, distance: d });
            }
        }
        Ok(())
    }
}

pub(crate) fn value_finite(v: &Value) -> bool {
    match v {
        Value::Scalar(a) => a.is_finite(),
        Value::Vector(a) => a.iter().all(|c| c.is_finite()),
        Value::Tensor(a) => a.iter().all(|c| c.is_finite()),
        Value::Third(a) => a.iter().all(|m| m.iter().all(|c| c.is_finite())),
    }
}

/// ⟦b⟧ = b⁺ − b⁻ from exact one-sided traces.
pub fn jump(bundle: &FieldBundle, q: Quantity, i: usize, s: f64) -> Result<Value> {
    let p = bundle.one_sided(q, i, s, Side::Plus)?;
    let m = bundle.one_sided(q, i, s, Side::Minus)?;
    Ok(Value::lincomb(1.0, &p, -1.0, &m))
}

/// {b} = (b⁺ + b⁻)/2 from exact one-sided traces.
pub fn average(bundle: &FieldBundle, q: Quantity, i: usize, s: f64) -> Result<Value> {
    let p = bundle.one_sided(q, i, s, Side::Plus)?;
    let m = bundle.one_sided(q, i, s, Side::Minus)?;
    Ok(Value::lincomb(0.5, &p, 0.5, &m))
}

/// Default offset schedule δ_k = δ₀/2^k.
pub fn default_schedule(scale: f64) -> Vec<f64> {
    (0..5).map(|k| 1e-2 * scale / 2f64.powi(k)).collect()
}

fn offset_eval(bundle: &FieldBundle, q: Quantity, i: usize, s: f64, delta: f64, mix: (f64, f64)) -> Result<Value> {
    let iface = &bundle.interfaces[i];
    let x = iface.point(s);
    let nu = iface.normal(s);
    let plus = bundle.sample(q, x - nu * delta)?;
    let minus = bundle.sample(q, x + nu * delta)?;
    Ok(Value::lincomb(mix.0, &plus, mix.1, &minus))
}

/// Richardson extrapolation to δ → 0 of values on a halving schedule.
fn richardson(vals: Vec<Value>, what: &str) -> Result<Value> {
    let n = vals.len();
    if n == 0 {
        return Err(VkError::Precondition("empty offset schedule".into()));
    }
    let mut table = vec![vals];
    for m in 1..n {
        let prev = &table[m - 1];
        let f = 2f64.powi(m as i32);
        let next: Vec<Value> = (1..prev.len())
            .map(|k| Value::lincomb(f / (f - 1.0), &prev[k], -1.0 / (f - 1.0), &prev[k - 1]))
            .collect();
        table.push(next);
    }
    let diag: Vec<Value> = table.iter().map(|col| *col.last().unwrap()).collect();
    let best = *diag.last().unwrap();
    if diag.len() >= 3 {
        let k = diag.len();
        let d1 = Value::lincomb(1.0, &diag[k - 1], -1.0, &diag[k - 2]).norm();
        let d0 = Value::lincomb(1.0, &diag[k - 2], -1.0, &diag[k - 3]).norm();
        let scale = best.norm().max(1e-300);
        if d1 > d0 && d1 > 1e-6 * scale {
            return Err(VkError::Convergence {
                what: what.into(),
                detail: format!("successive corrections {d0:.3e} then {d1:.3e}"),
            });
        }
    }
    Ok(best)
}

/// Offset-based jump: ⟦b⟧ from samples at x ∓ δν, extrapolated to δ → 0.
pub fn jump_offset(bundle: &FieldBundle, q: Quantity, i: usize, s: f64, schedule: &[f64]) -> Result<Value> {
    let vals = schedule.iter().map(|d| offset_eval(bundle, q, i, s, *d, (1.0, -1.0))).collect::<Result<Vec<_>>>()?;
    richardson(vals, "jump")
}

/// Offset-based average.
pub fn average_offset(bundle: &FieldBundle, q: Quantity, i: usize, s: f64, schedule: &[f64]) -> Result<Value> {
    let vals = schedule.iter().map(|d| offset_eval(bundle, q, i, s, *d, (0.5, 0.5))).collect::<Result<Vec<_>>>()?;
    richardson(vals, "average")
}

#[allow(dead_code)]
pub(crate) fn third_zero() -> Grad3 {
    [Mat2::zeros(), Mat2::zeros()]
}
