//! Fluctuation potentials `V = v'''/v'` of the deformed defects and the
//! analytic Pöschl-Teller solutions of their `k → 0` limit.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{self, DefectFamily, DeformParam};
use crate::grid::{Grid, Profile};

/// Which version of the fluctuation potential to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PotentialMode {
    /// `v'''/v'` of the deformed defect, all orders in `k`.
    Exact,
    /// Truncated after the `k²` term.
    ExpandedOrderK2,
    /// The `k⁰` term alone.
    PoschlTellerLimit,
}

impl FromStr for PotentialMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Self::Exact),
            "expanded" | "k2" | "order-k2" => Ok(Self::ExpandedOrderK2),
            "pt" | "limit" | "poschl-teller" => Ok(Self::PoschlTellerLimit),
            other => Err(Error::InvalidParameter(format!("unknown potential mode `{other}`"))),
        }
    }
}

impl fmt::Display for PotentialMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Exact => "exact",
            Self::ExpandedOrderK2 => "expanded",
            Self::PoschlTellerLimit => "pt",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMPotentialSpec {
    pub family: DefectFamily,
    pub k: DeformParam,
    pub mode: PotentialMode,
}

impl QMPotentialSpec {
    pub fn new(family: DefectFamily, k: DeformParam, mode: PotentialMode) -> Self {
        Self { family, k, mode }
    }

    pub fn exact(family: DefectFamily, k: DeformParam) -> Self {
        Self::new(family, k, PotentialMode::Exact)
    }

    pub fn poschl_teller(family: DefectFamily) -> Self {
        Self::new(family, DeformParam::ZERO, PotentialMode::PoschlTellerLimit)
    }
}

pub fn vqm(spec: &QMPotentialSpec, y: f64) -> f64 {
    let theory = spec.family.theory();
    let k = spec.k.value();
    match spec.mode {
        PotentialMode::PoschlTellerLimit => theory.vqm_order0(y),
        PotentialMode::ExpandedOrderK2 => theory.vqm_order0(y) + k * k * theory.vqm_order2(y),
        // the O(k⁴) remainder is below rounding inside the series branch
        PotentialMode::Exact if spec.k.uses_series() => theory.vqm_order0(y) + k * k * theory.vqm_order2(y),
        PotentialMode::Exact => theory.vqm_closed(k, y),
    }
}

/// `v_k'(y)` normalized to unit discrete L² norm: the exact `ω² = 0` mode of
/// the deformed defect's fluctuation operator.
pub fn zero_mode_exact(family: DefectFamily, k: DeformParam, grid: &Grid) -> Profile {
    fields::deriv_profile(family, k, grid).normalized()
}

/// Prefactor of `sinh y sech² y` giving unit norm on the line, `sqrt(3/2)`.
pub const PT_LEVEL1_NORM: f64 = 1.224_744_871_391_589;

/// The `sqrt(3)/2` prefactor sometimes quoted for the first excited state;
/// with it the state has squared norm 1/2.
pub const PT_LEVEL1_QUOTED_PREFACTOR: f64 = 0.866_025_403_784_438_6;

const PT_LEVEL0_NORM: f64 = 0.866_025_403_784_438_6;

fn check_level(level: i64) -> Result<()> {
    match level {
        0 | 1 => Ok(()),
        other => Err(Error::InvalidLevel(other)),
    }
}

/// Unit-normalized bound states of `4 - 6 sech² y`:
/// `ψ₀ = (√3/2) sech² y`, `ψ₁ = √(3/2) sinh y sech² y`.
pub fn pt_bound_mode(level: i64, y: f64) -> Result<f64> {
    check_level(level)?;
    let s = 1.0 / y.cosh();
    Ok(match level {
        0 => PT_LEVEL0_NORM * s * s,
        _ => PT_LEVEL1_NORM * y.tanh() * s,
    })
}

pub fn pt_eigenvalue(level: i64) -> Result<f64> {
    check_level(level)?;
    Ok(if level == 0 { 0.0 } else { 3.0 })
}

/// `ω² = 4 + q²` of the continuum; `q = 0` is the continuum edge.
pub fn continuum_omega2(q: f64) -> f64 {
    4.0 + q * q
}

/// Half-width `L` of the box `[-L, L]` continuum modes are normalized in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumBox(f64);

impl ContinuumBox {
    pub fn new(half_width: f64) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "box half-width must be positive and finite, got {half_width}"
            )));
        }
        Ok(Self(half_width))
    }

    pub fn half_width(self) -> f64 {
        self.0
    }
}

/// Continuum mode of `4 - 6 sech² y` with real wave number `q`,
///
/// ```text
/// ψ_q(y) = N_q^{-1/2} e^{iqy} (3 tanh² y - 1 - q² - 3iq tanh y)
/// ```
///
/// normalized to one on `[-L, L]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumMode {
    pub q: f64,
    pub domain: ContinuumBox,
    pub normalization: f64,
}

/// `N_q = 2L(4 + 5q² + q⁴) - 6 tanh L (2 + q² - sech² L)`.
pub fn continuum_normalization(q: f64, domain: ContinuumBox) -> f64 {
    let l = domain.half_width();
    let q2 = q * q;
    let s = 1.0 / l.cosh();
    2.0 * l * (4.0 + 5.0 * q2 + q2 * q2) - 6.0 * l.tanh() * (2.0 + q2 - s * s)
}

impl ContinuumMode {
    pub fn new(q: f64, domain: ContinuumBox) -> Result<Self> {
        if !q.is_finite() {
            return Err(Error::InvalidParameter(format!("wave number must be finite, got {q}")));
        }
        let normalization = continuum_normalization(q, domain);
        if normalization.is_nan() || normalization <= 0.0 {
            return Err(Error::Domain(format!(
                "continuum normalization {normalization} is not positive for q = {q}, L = {}",
                domain.half_width()
            )));
        }
        Ok(Self {
            q,
            domain,
            normalization,
        })
    }

    /// Unnormalized amplitude `3 tanh² y - 1 - q² - 3iq tanh y`.
    fn amplitude(&self, y: f64) -> Complex64 {
        let t = y.tanh();
        Complex64::new(3.0 * t * t - 1.0 - self.q * self.q, -3.0 * self.q * t)
    }

    pub fn eval(&self, y: f64) -> Result<Complex64> {
        let l = self.domain.half_width();
        if y.is_nan() || y.abs() > l {
            return Err(Error::OutsideBox { y, half_width: l });
        }
        let phase = Complex64::from_polar(1.0, self.q * y);
        Ok(phase * self.amplitude(y) / self.normalization.sqrt())
    }

    /// `|ψ_q(y)|²`, which carries no phase.
    pub fn density(&self, y: f64) -> Result<f64> {
        let l = self.domain.half_width();
        if y.is_nan() || y.abs() > l {
            return Err(Error::OutsideBox { y, half_width: l });
        }
        Ok(self.amplitude(y).norm_sqr() / self.normalization)
    }
}

pub fn pt_continuum_mode(q: f64, domain: ContinuumBox, y: f64) -> Result<Complex64> {
    ContinuumMode::new(q, domain)?.eval(y)
}
