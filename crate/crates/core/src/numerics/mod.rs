//! Quadrature, finite differences, root finding, Taylor jets, and bump test functions.

pub mod bump;
pub mod diff;
pub mod jet;
pub mod quadrature;
pub mod roots;

pub use bump::{make_bump, TestFunction};
pub use diff::fd_derivative;
pub use jet::Jet;
pub use quadrature::{gauss_legendre, integrate_interval, integrate_periodic};
pub use roots::find_root_bracketed;
