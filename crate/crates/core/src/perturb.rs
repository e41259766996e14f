//! First-order perturbation theory in `k²` around the Pöschl-Teller limit.
//!
//! `V_QM = V_PT + k² δV + O(k⁴)`, and a level shifts by
//! `k² ∫ |ψ|² δV` over the line (bound states) or over `[-L, L]`
//! (box-normalized continuum states).

use crate::error::{Error, Result};
use crate::fields::{DefectFamily, DeformParam};
use crate::numerics::{self, DEFAULT_TOL};

/// Coefficient of `k²` in the small-`k` fluctuation potential.
///
/// For the kink this is `14 sech⁴ y - 12 sech² y`; that sign is the one that
/// reproduces `ω₁² = 3 - (8/5) k²`.
pub fn delta_v(family: DefectFamily, y: f64) -> f64 {
    family.theory().vqm_order2(y)
}

/// Integration range for a shift integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bound {
    /// Bound states, integrated over the whole line.
    Infinite,
    /// Continuum states normalized in `[-L, L]`.
    Box(f64),
}

/// `k² ∫_{-b}^{b} density(y) δV(y) dy` at the default tolerance.
pub fn first_order_shift<F: Fn(f64) -> f64>(
    density: F,
    family: DefectFamily,
    k: DeformParam,
    bound: Bound,
) -> Result<f64> {
    first_order_shift_with_tol(density, family, k, bound, DEFAULT_TOL)
}

pub fn first_order_shift_with_tol<F: Fn(f64) -> f64>(
    density: F,
    family: DefectFamily,
    k: DeformParam,
    bound: Bound,
    tol: f64,
) -> Result<f64> {
    let integrand = |y: f64| density(y) * delta_v(family, y);
    let result = match bound {
        Bound::Infinite => numerics::quad_line(integrand, tol)?,
        Bound::Box(l) => {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::InvalidParameter(format!(
                    "box half-width must be positive, got {l}"
                )));
            }
            numerics::quad(integrand, -l, l, tol)?
        }
    };
    let k = k.value();
    Ok(k * k * result.value)
}

/// Level whose perturbed eigenvalue is requested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LevelSpec {
    Zero,
    One,
    /// Continuum edge as a box state of half-width `half_width`.
    Two {
        half_width: f64,
    },
    Continuum {
        q: f64,
        half_width: f64,
    },
}

impl LevelSpec {
    fn half_width(&self) -> Option<f64> {
        match *self {
            LevelSpec::Two { half_width } | LevelSpec::Continuum { half_width, .. } => Some(half_width),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedLevel {
    pub level: LevelSpec,
    pub k: DeformParam,
    pub omega2: f64,
}

impl PerturbedLevel {
    pub fn new(level: LevelSpec, k: DeformParam) -> Result<Self> {
        Ok(Self {
            level,
            k,
            omega2: omega_perturbed(level, k)?,
        })
    }
}

/// Closed-form perturbed eigenvalues of the kink fluctuation operator:
///
/// * `ω₀² = (32/105) k⁴`
/// * `ω₁² = 3 - (8/5) k² + (24/35) k⁴`
/// * `ω₂² = 4 + k² sech⁷L (360 sinh L - 147 sinh 3L + 31 sinh 5L - 2 sinh 7L) / (120 L + 90 sech²L tanh L)`
/// * `ω_q² = 4 + q² + 2k² (tanh L / 15) F(q, L)`
///
/// The `k⁴` term of `ω₀²` is an artifact of truncating the potential: the
/// exact operator keeps `v_k'` as a zero mode for every `k`.
pub fn omega_perturbed(level: LevelSpec, k: DeformParam) -> Result<f64> {
    if let Some(l) = level.half_width() {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "box half-width must be positive, got {l}"
            )));
        }
    }
    let k2 = k.value() * k.value();
    Ok(match level {
        LevelSpec::Zero => 32.0 / 105.0 * k2 * k2,
        LevelSpec::One => 3.0 - 8.0 / 5.0 * k2 + 24.0 / 35.0 * k2 * k2,
        LevelSpec::Two { half_width } => 4.0 + k2 * edge_coefficient(half_width),
        LevelSpec::Continuum { q, half_width } => {
            4.0 + q * q + 2.0 * k2 * half_width.tanh() / 15.0 * f_factor(q, half_width)?
        }
    })
}

/// Closed-form `k²` coefficient of `ω₂²(L)`, written with `e^{-2L}` so that
/// large `L` does not overflow `sinh 7L`.
fn edge_coefficient(l: f64) -> f64 {
    // sech⁷L sinh(nL) = 2⁶ e^{(n-7)L} (1 - e^{-2nL}) / (1 + e^{-2L})⁷
    let e = (-2.0 * l).exp();
    let term = |n: i32| (-(7 - n) as f64 * l).exp() * -(-2.0 * n as f64 * l).exp_m1();
    let numerator = 64.0 / (1.0 + e).powi(7) * (360.0 * term(1) - 147.0 * term(3) + 31.0 * term(5) - 2.0 * term(7));
    let s = 1.0 / l.cosh();
    numerator / (120.0 * l + 90.0 * s * s * l.tanh())
}

/// Box-size factor of the continuum shift,
///
/// ```text
/// F(q, L) = [(4+q²)(41+35q²) sech²L - 63(4+q²) sech⁴L + 135 sech⁶L - 4(4+q²)(2+5q²)]
///           / [(4 + 5q² + q⁴) L - 3 tanh L (2 + q² - sech²L)]
/// ```
pub fn f_factor(q: f64, half_width: f64) -> Result<f64> {
    let l = half_width;
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "box half-width must be positive, got {l}"
        )));
    }
    let denom = f_denominator(q, l);
    if denom.abs() < 1e-12 {
        return Err(Error::Domain(format!(
            "F(q, L) denominator {denom:e} vanishes at q = {q}, L = {l}"
        )));
    }
    let q2 = q * q;
    let a = 4.0 + q2;
    let s2 = (1.0 / l.cosh()).powi(2);
    let numerator =
        a * (41.0 + 35.0 * q2) * s2 - 63.0 * a * s2 * s2 + 135.0 * s2 * s2 * s2 - 4.0 * a * (2.0 + 5.0 * q2);
    Ok(numerator / denom)
}

/// Denominator of [`f_factor`], equal to half the continuum normalization.
pub fn f_denominator(q: f64, half_width: f64) -> f64 {
    let l = half_width;
    let q2 = q * q;
    let s2 = (1.0 / l.cosh()).powi(2);
    (4.0 + 5.0 * q2 + q2 * q2) * l - 3.0 * l.tanh() * (2.0 + q2 - s2)
}
