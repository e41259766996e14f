//! Primitive and perturbatively deformed defects.
//!
//! A primitive defect `v(y)` (tanh, sech² or sech) is deformed by averaging
//! it over a window of half-width `k`:
//!
//! ```text
//! v_k(y) = [V(y + k) - V(y - k)] / 2k,    V' = v
//! ```
//!
//! Everything in this module is even in `k`, so [`DeformParam`] stores `|k|`.
//! The difference quotient is 0/0 at `k = 0`; below [`SERIES_THRESHOLD`] the
//! deformed quantities are evaluated from their Taylor expansion in `k`
//! instead.

mod series;
mod theory;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Grid, Profile};
use crate::numerics::{self, QuadResult};

pub use series::{even_series, SechTanhPoly};
pub use theory::{lookup, registry, Chi4, DefectTheory, Phi4, SineGordon};

/// Below this `|k|`, deformed fields use their fourth-order Taylor expansion.
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Below this `|k|`, topological masses use their Taylor expansion (through
/// `k¹⁴`), which avoids the cancellation in `(1 - O(k²)) / k²`.
pub const MASS_SERIES_THRESHOLD: f64 = 0.1;

/// Selects one of the three defect theories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DefectFamily {
    Phi4Kink,
    Chi4Lump,
    SineGordonLump,
}

impl DefectFamily {
    pub const ALL: [DefectFamily; 3] = [
        DefectFamily::Phi4Kink,
        DefectFamily::Chi4Lump,
        DefectFamily::SineGordonLump,
    ];

    pub fn theory(self) -> &'static dyn DefectTheory {
        registry()
            .iter()
            .copied()
            .find(|t| t.family() == self)
            .expect("every family is registered")
    }

    pub fn name(self) -> &'static str {
        self.theory().name()
    }

    pub fn is_kink(self) -> bool {
        self == DefectFamily::Phi4Kink
    }
}

impl fmt::Display for DefectFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DefectFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        lookup(s)
            .map(|t| t.family())
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// Deformation parameter `k`, stored as `|k|`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct DeformParam(f64);

impl DeformParam {
    pub const ZERO: DeformParam = DeformParam(0.0);

    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "deformation parameter must be finite, got {k}"
            )));
        }
        Ok(Self(k.abs()))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn uses_series(self) -> bool {
        self.0 < SERIES_THRESHOLD
    }
}

impl TryFrom<f64> for DeformParam {
    type Error = Error;

    fn try_from(k: f64) -> Result<Self> {
        Self::new(k)
    }
}

pub fn primitive_field(family: DefectFamily, y: f64) -> f64 {
    family.theory().primitive_field(y)
}

pub fn primitive_potential(family: DefectFamily, v: f64) -> f64 {
    family.theory().primitive_potential(v)
}

/// Windowed average `p + k²/6 p'' + k⁴/120 p''''`, shifted by `offset`
/// derivatives.
fn taylor_average(theory: &dyn DefectTheory, k: f64, y: f64, offset: usize) -> f64 {
    let d = theory.primitive().derivatives(offset + 5);
    let k2 = k * k;
    d[offset].eval(y) + k2 / 6.0 * d[offset + 2].eval(y) + k2 * k2 / 120.0 * d[offset + 4].eval(y)
}

/// Small-`k` branch of [`deformed_field`], usable at any `k` (error `O(k⁶)`).
pub fn deformed_field_series(family: DefectFamily, k: DeformParam, y: f64) -> f64 {
    taylor_average(family.theory(), k.value(), y, 0)
}

/// Small-`k` branch of [`deformed_field_deriv`].
pub fn deformed_field_deriv_series(family: DefectFamily, k: DeformParam, y: f64) -> f64 {
    taylor_average(family.theory(), k.value(), y, 1)
}

pub fn deformed_field(family: DefectFamily, k: DeformParam, y: f64) -> f64 {
    let theory = family.theory();
    if k.uses_series() {
        taylor_average(theory, k.value(), y, 0)
    } else {
        theory.deformed_closed(k.value(), y)
    }
}

/// `d/dy` of the deformed field, which is also the BPS superpotential
/// derivative `u_v`.
pub fn deformed_field_deriv(family: DefectFamily, k: DeformParam, y: f64) -> f64 {
    let theory = family.theory();
    if k.uses_series() {
        taylor_average(theory, k.value(), y, 1)
    } else {
        theory.deformed_deriv_closed(k.value(), y)
    }
}

pub fn energy_density(family: DefectFamily, k: DeformParam, y: f64) -> f64 {
    deformed_field_deriv(family, k, y).powi(2)
}

/// `v(+inf) - v(-inf)`: 2 for the kink, 0 for both lumps.
pub fn topological_charge(family: DefectFamily, _k: DeformParam) -> f64 {
    family.theory().charge()
}

pub fn topological_mass_closed(family: DefectFamily, k: DeformParam) -> f64 {
    let theory = family.theory();
    if k.value() < MASS_SERIES_THRESHOLD {
        even_series(theory.mass_series(), k.value())
    } else {
        theory.mass_closed(k.value())
    }
}

/// Integrates the energy density over the real line.
pub fn topological_mass_quad(family: DefectFamily, k: DeformParam, tol: f64) -> Result<QuadResult> {
    numerics::quad_line(|y| energy_density(family, k, y), tol)
}

pub fn field_profile(family: DefectFamily, k: DeformParam, grid: &Grid) -> Profile {
    grid.sample(|y| deformed_field(family, k, y))
}

pub fn deriv_profile(family: DefectFamily, k: DeformParam, grid: &Grid) -> Profile {
    grid.sample(|y| deformed_field_deriv(family, k, y))
}

pub fn density_profile(family: DefectFamily, k: DeformParam, grid: &Grid) -> Profile {
    grid.sample(|y| energy_density(family, k, y))
}

/// `(v_k(y), ½ v_k'(y)²)` at every node: the scalar potential traced out
/// parametrically along the defect.
pub fn parametric_potential(family: DefectFamily, k: DeformParam, grid: &Grid) -> Vec<(f64, f64)> {
    grid.nodes()
        .map(|y| {
            let u = deformed_field_deriv(family, k, y);
            (deformed_field(family, k, y), 0.5 * u * u)
        })
        .collect()
}
