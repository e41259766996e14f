use crate::error::{Error, Result};
use crate::grid::{Grid, Profile};
use crate::schrodinger::{vqm, QMPotentialSpec};

use super::eigen::SymTridiagonal;

/// Lowest eigenpairs of `-d²/dy² + V` on a grid with Dirichlet edges.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Unit discrete-L² eigenfunctions on the full grid (zero at both edges).
    pub eigenfunctions: Vec<Profile>,
    pub grid: Grid,
    /// Bottom of the continuum; eigenvalues at or above it discretize the
    /// continuum and depend on the box size.
    pub continuum_threshold: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn is_box_artifact(&self, index: usize) -> bool {
        self.eigenvalues[index] >= self.continuum_threshold
    }

    pub fn bound_count(&self) -> usize {
        self.eigenvalues
            .iter()
            .take_while(|&&e| e < self.continuum_threshold)
            .count()
    }
}

/// Solves for the `m` lowest levels of the fluctuation potential `spec`.
pub fn solve_spectrum(spec: &QMPotentialSpec, grid: &Grid, m: usize) -> Result<Spectrum> {
    let threshold = spec.family.theory().continuum_threshold();
    solve_potential(|y| vqm(spec, y), grid, m, Some(threshold))
}

/// Solves for the `m` lowest levels of an arbitrary potential. Without an
/// explicit threshold the continuum edge is taken as the smaller of the two
/// edge values of `potential`.
pub fn solve_potential<V: Fn(f64) -> f64>(
    potential: V,
    grid: &Grid,
    m: usize,
    continuum_threshold: Option<f64>,
) -> Result<Spectrum> {
    let interior = grid.len() - 2;
    if m == 0 {
        return Err(Error::InvalidParameter("need at least one level".into()));
    }
    if m > interior {
        return Err(Error::InvalidParameter(format!(
            "{m} levels requested but the grid has only {interior} interior nodes"
        )));
    }

    let h = grid.spacing();
    let kinetic = 1.0 / (h * h);
    let diag: Vec<f64> = (1..=interior)
        .map(|i| 2.0 * kinetic + potential(grid.node(i)))
        .collect();
    let matrix = SymTridiagonal::new(diag, vec![-kinetic; interior - 1])?;

    let mut eigenvalues = Vec::with_capacity(m);
    let mut raw: Vec<Vec<f64>> = Vec::with_capacity(m);
    for j in 0..m {
        let lambda = matrix.eigenvalue(j)?;
        let v = matrix.eigenvector(lambda, &raw)?;
        eigenvalues.push(lambda);
        raw.push(v);
    }

    let eigenfunctions = raw
        .iter()
        .map(|v| {
            let mut values = Vec::with_capacity(grid.len());
            values.push(0.0);
            values.extend_from_slice(v);
            values.push(0.0);
            fix_sign(&mut values);
            Profile::new(*grid, values).map(Profile::normalized)
        })
        .collect::<Result<Vec<_>>>()?;

    let continuum_threshold =
        continuum_threshold.unwrap_or_else(|| potential(grid.y_min()).min(potential(grid.y_max())));

    Ok(Spectrum {
        eigenvalues,
        eigenfunctions,
        grid: *grid,
        continuum_threshold,
    })
}

/// First clearly nonzero component positive, so output is reproducible.
fn fix_sign(values: &mut [f64]) {
    let max = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if let Some(first) = values.iter().find(|v| v.abs() > 1e-3 * max) {
        if *first < 0.0 {
            values.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn particle_in_a_box() {
        let half = 5.0;
        let grid = Grid::symmetric(half, 2001).unwrap();
        let s = solve_potential(|_| 0.0, &grid, 4, None).unwrap();
        for (i, e) in s.eigenvalues.iter().enumerate() {
            let n = (i + 1) as f64;
            let want = (n * PI / (2.0 * half)).powi(2);
            assert_abs_diff_eq!(*e, want, epsilon = 1e-5 * n.powi(4));
        }
        for (n, f) in s.eigenfunctions.iter().enumerate() {
            assert_abs_diff_eq!(f.norm(), 1.0, epsilon = 1e-10);
            assert_eq!(f.sign_changes(1e-8), n);
        }
    }

    #[test]
    fn harmonic_oscillator() {
        let grid = Grid::symmetric(10.0, 2001).unwrap();
        let s = solve_potential(|y| y * y, &grid, 3, None).unwrap();
        for (i, e) in s.eigenvalues.iter().enumerate() {
            assert_abs_diff_eq!(*e, (2 * i + 1) as f64, epsilon = 1e-3);
        }
    }

    #[test]
    fn rejects_too_many_levels() {
        let grid = Grid::symmetric(1.0, 5).unwrap();
        assert!(solve_potential(|_| 0.0, &grid, 4, None).is_err());
        assert!(solve_potential(|_| 0.0, &grid, 0, None).is_err());
        assert!(solve_potential(|_| 0.0, &grid, 3, None).is_ok());
    }
}
