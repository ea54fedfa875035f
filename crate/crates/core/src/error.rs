use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VkError {
    #[error("non-finite value while evaluating {what} at {at}")]
    Evaluation { what: String, at: String },

    #[error("point ({x:.6e}, {y:.6e}) lies within {distance:.3e} of {set}")]
    Proximity { set: String, x: f64, y: f64, distance: f64 },

    #[error("no sign change on [{lo}, {hi}]: f(lo) = {flo:.3e}, f(hi) = {fhi:.3e}")]
    Bracket { lo: f64, hi: f64, flo: f64, fhi: f64 },

    #[error("extrapolation did not converge for {what}: {detail}")]
    Convergence { what: String, detail: String },

    #[error("finite-difference stencil failed at {x}: {source_msg}")]
    Stencil { x: f64, source_msg: String },

    #[error("geometry: {0}")]
    Geometry(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fold closure violated: |sum of gamma_i nu_i| = {residual:.3e}")]
    Closure { residual: f64 },

    #[error("quadrature accuracy: {what} estimate {estimate:.3e} above {target:.3e}")]
    Accuracy { what: String, estimate: f64, target: f64 },
}

pub type Result<T> = std::result::Result<T, VkError>;
