//! Overflow-safe arithmetic and the quadrature/differentiation oracles the
//! rest of the crate checks itself against.
//!
//! Direct `f64` quadrature is reliable for inner-solution scales sigma <=
//! 300 (`exp(sigma x)` with x <= 1 stays under the `f64` overflow point
//! `e^709` with margin); beyond that, use [`integrate_log`].

pub mod dd;
pub mod diff;
pub mod logfloat;
pub mod quad;

pub use diff::{derivative, grid_derivative, grid_second_derivative, second_derivative};
pub use logfloat::{logfloat_add, LogFloat};
pub use quad::{integrate, integrate_log, NumericsError, QuadratureSpec};

/// Largest sigma for which direct `f64` quadrature of `exp(sigma x)`-type
/// integrands on [0, 1] is permitted.
pub const DIRECT_QUADRATURE_SIGMA_MAX: f64 = 300.0;
