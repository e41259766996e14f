use crate::error::{Error, Result};

/// Uniform grid of `n` nodes on `[y_min, y_max]`, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    y_min: f64,
    y_max: f64,
    n: usize,
}

impl Grid {
    pub fn new(y_min: f64, y_max: f64, n: usize) -> Result<Self> {
        if !(y_min.is_finite() && y_max.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "bounds must be finite, got [{y_min}, {y_max}]"
            )));
        }
        if y_min >= y_max {
            return Err(Error::InvalidGrid(format!(
                "y_min ({y_min}) must be below y_max ({y_max})"
            )));
        }
        if n < 3 {
            return Err(Error::InvalidGrid(format!("need at least 3 nodes, got {n}")));
        }
        Ok(Self { y_min, y_max, n })
    }

    /// Grid on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, n: usize) -> Result<Self> {
        Self::new(-half_width, half_width, n)
    }

    pub fn y_min(&self) -> f64 {
        self.y_min
    }

    pub fn y_max(&self) -> f64 {
        self.y_max
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        (self.y_max - self.y_min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n);
        if i == self.n - 1 {
            self.y_max
        } else {
            self.y_min + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.node(i))
    }

    /// Sample `f` at every node.
    pub fn sample<F: Fn(f64) -> f64>(&self, f: F) -> Profile {
        Profile {
            grid: *self,
            values: self.nodes().map(f).collect(),
        }
    }
}

/// Values sampled on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    grid: Grid,
    values: Vec<f64>,
}

impl Profile {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidGrid(format!(
                "profile has {} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "non-finite profile value at y = {}",
                grid.node(i)
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// Discrete L² norm `sqrt(h Σ v_i²)`.
    pub fn norm(&self) -> f64 {
        self.inner(self).sqrt()
    }

    /// Discrete inner product `h Σ u_i v_i`. Both profiles must share a grid.
    pub fn inner(&self, other: &Profile) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        self.grid.spacing() * self.values.iter().zip(&other.values).map(|(a, b)| a * b).sum::<f64>()
    }

    pub fn normalized(mut self) -> Self {
        let norm = self.norm();
        if norm > 0.0 {
            self.values.iter_mut().for_each(|v| *v /= norm);
        }
        self
    }

    /// Profile evaluated at the mirrored nodes, `v(-y)`. Only meaningful on
    /// grids symmetric about the origin.
    pub fn reflected(&self) -> Profile {
        let mut values = self.values.clone();
        values.reverse();
        Profile {
            grid: self.grid,
            values,
        }
    }

    /// Number of sign changes, ignoring values below `rel_floor * max|v|`.
    pub fn sign_changes(&self, rel_floor: f64) -> usize {
        let floor = rel_floor * self.max_abs();
        let mut last = 0.0_f64;
        let mut count = 0;
        for &v in &self.values {
            if v.abs() <= floor {
                continue;
            }
            if last != 0.0 && last.signum() != v.signum() {
                count += 1;
            }
            last = v;
        }
        count
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Indices of strict interior local maxima.
    pub fn local_maxima(&self) -> Vec<usize> {
        self.values
            .windows(3)
            .enumerate()
            .filter(|(_, w)| w[1] > w[0] && w[1] > w[2])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Second moment `Σ y² v / Σ v` of a nonnegative density.
    pub fn variance(&self) -> f64 {
        let (mut m0, mut m2) = (0.0, 0.0);
        for (y, v) in self.grid.nodes().zip(&self.values) {
            m0 += v;
            m2 += y * y * v;
        }
        m2 / m0
    }
}
