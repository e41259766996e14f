//! Numerical oracles: adaptive quadrature and a finite-difference
//! Schrödinger eigensolver.

mod eigen;
mod quad;
mod spectrum;

pub use eigen::SymTridiagonal;
pub use quad::{quad, quad_line, QuadResult, MAX_SUBDIVISIONS};
pub use spectrum::{solve_potential, solve_spectrum, Spectrum};

/// Default absolute tolerance for shift and mass integrals.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Second derivative of sampled values by the five-point fourth-order
/// stencil. The two nodes at each end are left as `NaN`.
pub fn second_derivative_4th(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![f64::NAN; n];
    let scale = 1.0 / (12.0 * h * h);
    for i in 2..n.saturating_sub(2) {
        out[i] =
            scale * (-values[i - 2] + 16.0 * values[i - 1] - 30.0 * values[i] + 16.0 * values[i + 1] - values[i + 2]);
    }
    out
}
