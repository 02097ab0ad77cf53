//! Floating-point support layer: adaptive quadrature, principal-value
//! integrals with excised singularities, and finite-difference derivatives.

pub mod fd;
pub mod pv;
pub mod quadrature;

/// Value of a numerical integral together with a conservative error bound.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
}
