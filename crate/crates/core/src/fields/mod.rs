//! Analytic field representations with exact one-sided traces on interfaces.

pub mod bundle;
pub mod interface;
pub mod profile;
pub mod scalar;
pub mod tensor_field;

pub use bundle::{
    average, average_offset, default_schedule, jump, jump_offset, DeclaredDegrees, FieldBundle, Material, Quantity,
    Side,
};
pub use interface::{Curve, InterfaceSpec};
pub use profile::{AngularProfile, Harmonic, ProfilePiece};
pub use scalar::{PiecewiseCylindricalField, PiecewiseRadialField, Poly2, ScalarField, SectorAffineField};
pub use tensor_field::{TensorField, TensorJet};

use crate::error::Result;
use crate::tensor::{Mat2, Vec2};

pub fn eval_w(b: &FieldBundle, x: Vec2) -> Result<f64> {
    Ok(b.sample(Quantity::W, x)?.scalar())
}

pub fn eval_grad_w(b: &FieldBundle, x: Vec2) -> Result<Vec2> {
    Ok(b.sample(Quantity::GradW, x)?.vector())
}

pub fn eval_hess_w(b: &FieldBundle, x: Vec2) -> Result<Mat2> {
    Ok(b.sample(Quantity::HessW, x)?.tensor())
}

pub fn eval_phi(b: &FieldBundle, x: Vec2) -> Result<f64> {
    Ok(b.sample(Quantity::Phi, x)?.scalar())
}

pub fn eval_grad_phi(b: &FieldBundle, x: Vec2) -> Result<Vec2> {
    Ok(b.sample(Quantity::GradPhi, x)?.vector())
}

pub fn eval_hess_phi(b: &FieldBundle, x: Vec2) -> Result<Mat2> {
    Ok(b.sample(Quantity::HessPhi, x)?.tensor())
}
