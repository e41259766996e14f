//! Perturbatively deformed kink and lump defects, the Schrödinger-like
//! fluctuation problem they generate, and the Pöschl-Teller perturbation
//! theory around the undeformed limit.
//!
//! Every closed form in [`fields`], [`schrodinger`] and [`perturb`] has an
//! independent numerical counterpart in [`numerics`]: adaptive Gauss-Kronrod
//! quadrature for integrals and a Sturm-bisection eigensolver for spectra.
//! The [`report`] module turns both into tables for the command-line tool.

pub mod error;
pub mod fields;
pub mod grid;
pub mod numerics;
pub mod perturb;
pub mod report;
pub mod schrodinger;

pub use error::{Error, Result};
pub use fields::{DefectFamily, DefectTheory, DeformParam};
pub use grid::{Grid, Profile};
