//! Construction and residual verification of singular von Kármán plate fields:
//! conical disclinations, straight and circular folds, terminating folds, and
//! multi-fold vertices.

pub mod distcalc;
pub mod error;
pub mod fields;
pub mod kinematics;
pub mod numerics;
pub mod residual;
pub mod scenarios;
pub mod statics;
pub mod tensor;
pub mod vonkarman;

pub use error::{Result, VkError};
