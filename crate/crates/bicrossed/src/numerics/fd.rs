//! Finite-difference derivatives with Richardson refinement.

/// Fourth-order central difference with step `h`.
pub fn derivative(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

/// Central difference at two step sizes combined by Richardson
/// extrapolation of the fourth-order error term.
pub fn derivative_refined(f: &dyn Fn(f64) -> f64, x: f64) -> f64 {
    let h = 1e-3;
    let d1 = derivative(f, x, h);
    let d2 = derivative(f, x, h / 2.0);
    (16.0 * d2 - d1) / 15.0
}

/// Mixed second derivative d^2 f / dx dy at `(x, y)` by nesting central
/// differences.
pub fn mixed_derivative(f: &dyn Fn(f64, f64) -> f64, x: f64, y: f64) -> f64 {
    let outer = |u: f64| derivative_refined(&|v| f(u, v), y);
    derivative_refined(&outer, x)
}
