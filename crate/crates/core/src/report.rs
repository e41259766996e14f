//! Tabular data products behind the command-line tool.
//!
//! Each command turns a [`RunConfig`] into a [`Report`]: one or more named
//! tables of floating-point columns, written as CSV (17 significant digits,
//! one header row per table) or as a single JSON document following
//! `schema/report.schema.json`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{self, DefectFamily, DeformParam};
use crate::grid::Grid;
use crate::numerics::{self, DEFAULT_TOL};
use crate::perturb::{self, Bound, LevelSpec};
use crate::schrodinger::{self, ContinuumBox, ContinuumMode, PotentialMode, QMPotentialSpec};

pub const DEFAULT_PROFILE_K: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
pub const DEFAULT_PT_MODES_K: [f64; 2] = [0.2, 0.5];
pub const DEFAULT_PERTURB_K: [f64; 5] = [0.0, 0.1, 0.2, 0.3, 0.5];
pub const DEFAULT_SOLVE_K: [f64; 7] = [0.0, 0.1, 0.2, 0.3, 0.5, 1.0, 2.0];
pub const DEFAULT_CONTINUUM_K: [f64; 3] = [0.0, 0.2, 0.5];
pub const DEFAULT_HALF_WIDTHS: [f64; 2] = [5.0, 10.0];

const DEFAULT_Y_MIN: f64 = -20.0;
const DEFAULT_Y_MAX: f64 = 20.0;
const DEFAULT_N: usize = 4001;
const DEFAULT_CONTINUUM_N: usize = 401;

fn default_mass_k() -> Vec<f64> {
    (0..=30).map(|i| i as f64 / 10.0).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidParameter(format!("unknown output format `{other}`"))),
        }
    }
}

/// Settings shared by every command. `None` fields fall back to the
/// per-command defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: DefectFamily,
    pub k_values: Option<Vec<f64>>,
    pub y_min: Option<f64>,
    pub y_max: Option<f64>,
    pub n: Option<usize>,
    pub half_widths: Vec<f64>,
    pub q_min: f64,
    pub q_max: f64,
    pub q_steps: usize,
    pub levels: usize,
    pub tol: f64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            family: DefectFamily::Phi4Kink,
            k_values: None,
            y_min: None,
            y_max: None,
            n: None,
            half_widths: DEFAULT_HALF_WIDTHS.to_vec(),
            q_min: 0.0,
            q_max: 3.0,
            q_steps: 31,
            levels: 3,
            tol: DEFAULT_TOL,
            format: OutputFormat::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(ks) = &self.k_values {
            if ks.is_empty() {
                return Err(Error::InvalidParameter("k list is empty".into()));
            }
            for &k in ks {
                DeformParam::new(k)?;
            }
        }
        self.grid()?;
        for &l in &self.half_widths {
            ContinuumBox::new(l)?;
        }
        if self.half_widths.is_empty() {
            return Err(Error::InvalidParameter("box half-width list is empty".into()));
        }
        if !(self.q_min.is_finite() && self.q_max.is_finite()) || self.q_min > self.q_max {
            return Err(Error::InvalidParameter(format!(
                "invalid q range [{}, {}]",
                self.q_min, self.q_max
            )));
        }
        if self.q_steps == 0 {
            return Err(Error::InvalidParameter("q-steps must be at least 1".into()));
        }
        if self.levels == 0 {
            return Err(Error::InvalidParameter("levels must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(
            self.y_min.unwrap_or(DEFAULT_Y_MIN),
            self.y_max.unwrap_or(DEFAULT_Y_MAX),
            self.n.unwrap_or(DEFAULT_N),
        )
    }

    fn k_list(&self, default: &[f64]) -> Result<Vec<DeformParam>> {
        self.k_values
            .as_deref()
            .unwrap_or(default)
            .iter()
            .map(|&k| DeformParam::new(k))
            .collect()
    }

    // raw k values as given, for output columns
    fn k_raw(&self, default: &[f64]) -> Vec<f64> {
        self.k_values.clone().unwrap_or_else(|| default.to_vec())
    }

    fn q_values(&self) -> Vec<f64> {
        if self.q_steps == 1 {
            return vec![self.q_min];
        }
        let dq = (self.q_max - self.q_min) / (self.q_steps - 1) as f64;
        (0..self.q_steps).map(|i| self.q_min + i as f64 * dq).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(name: S, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn with_columns(name: &str, columns: Vec<String>) -> Self {
        Self {
            name: name.into(),
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Rows whose column `name` equals `value`.
    pub fn filter(&self, name: &str, value: f64) -> Vec<&Vec<f64>> {
        match self.columns.iter().position(|c| c == name) {
            Some(idx) => self.rows.iter().filter(|r| r[idx] == value).collect(),
            None => Vec::new(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v:.16e}");
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub family: String,
    pub tables: Vec<Table>,
}

impl Report {
    fn new(command: &str, family: DefectFamily, tables: Vec<Table>) -> Self {
        Self {
            command: command.into(),
            family: family.name().into(),
            tables,
        }
    }

    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Writes the report. CSV with several tables goes to one file per table
    /// (`<stem>.<table>.csv` next to `path` for all but the first); on stdout
    /// the tables follow each other separated by a blank line.
    pub fn write(&self, format: OutputFormat, out: Option<&Path>) -> Result<Vec<PathBuf>> {
        match (format, out) {
            (OutputFormat::Json, Some(path)) => {
                fs::write(path, self.to_json()? + "\n")?;
                Ok(vec![path.to_path_buf()])
            }
            (OutputFormat::Json, None) => {
                let mut stdout = std::io::stdout().lock();
                writeln!(stdout, "{}", self.to_json()?)?;
                Ok(Vec::new())
            }
            (OutputFormat::Csv, Some(path)) => {
                let mut written = Vec::new();
                for (i, table) in self.tables.iter().enumerate() {
                    let target = if i == 0 {
                        path.to_path_buf()
                    } else {
                        sibling(path, &table.name)
                    };
                    fs::write(&target, table.to_csv())?;
                    written.push(target);
                }
                Ok(written)
            }
            (OutputFormat::Csv, None) => {
                let mut stdout = std::io::stdout().lock();
                for (i, table) in self.tables.iter().enumerate() {
                    if i > 0 {
                        writeln!(stdout)?;
                    }
                    stdout.write_all(table.to_csv().as_bytes())?;
                }
                Ok(Vec::new())
            }
        }
    }
}

fn sibling(path: &Path, table: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let ext = path
        .extension()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "csv".into());
    path.with_file_name(format!("{stem}.{table}.{ext}"))
}

/// Maps `f` over `items` on scoped threads, keeping input order.
fn ordered_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync,
{
    std::thread::scope(|scope| {
        let handles: Vec<_> = items.iter().map(|item| scope.spawn(|| f(item))).collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

/// Field, derivative, energy density and parametric potential per `k`.
pub fn cmd_profile(cfg: &RunConfig) -> Result<Report> {
    let grid = cfg.grid()?;
    let family = cfg.family;
    let mut table = Table::new(
        "profile",
        &["k", "y", "field", "derivative", "energy_density", "potential"],
    );
    for (raw, k) in cfg
        .k_raw(&DEFAULT_PROFILE_K)
        .into_iter()
        .zip(cfg.k_list(&DEFAULT_PROFILE_K)?)
    {
        for y in grid.nodes() {
            let v = fields::deformed_field(family, k, y);
            let u = fields::deformed_field_deriv(family, k, y);
            table.push(vec![raw, y, v, u, u * u, 0.5 * u * u]);
        }
    }
    Ok(Report::new("profile", family, vec![table]))
}

/// Closed-form and quadrature masses of all three families.
pub fn cmd_mass(cfg: &RunConfig) -> Result<Report> {
    let ks = cfg.k_values.clone().unwrap_or_else(default_mass_k);
    for &k in &ks {
        DeformParam::new(k)?;
    }
    let mut columns = vec!["k".to_string()];
    for f in DefectFamily::ALL {
        let n = short_name(f);
        columns.extend([format!("M_{n}"), format!("M_{n}_quad"), format!("M_{n}_rel_err")]);
    }
    let rows = ordered_map(&ks, |&k| -> Result<Vec<f64>> {
        let kp = DeformParam::new(k)?;
        let mut row = vec![k];
        for f in DefectFamily::ALL {
            let closed = fields::topological_mass_closed(f, kp);
            let quad = fields::topological_mass_quad(f, kp, cfg.tol)?.value;
            row.extend([closed, quad, ((closed - quad) / closed).abs()]);
        }
        Ok(row)
    });
    let mut table = Table::with_columns("mass", columns);
    for row in rows {
        table.push(row?);
    }
    Ok(Report::new("mass", cfg.family, vec![table]))
}

fn short_name(f: DefectFamily) -> &'static str {
    match f {
        DefectFamily::Phi4Kink => "phi",
        DefectFamily::Chi4Lump => "chi",
        DefectFamily::SineGordonLump => "eta",
    }
}

/// Exact, `O(k²)` and Pöschl-Teller potentials with the normalized zero mode.
pub fn cmd_qm_potential(cfg: &RunConfig) -> Result<Report> {
    let grid = cfg.grid()?;
    let family = cfg.family;
    let mut table = Table::new(
        "qm_potential",
        &["k", "y", "v_exact", "v_expanded", "v_pt", "zero_mode"],
    );
    for (raw, k) in cfg
        .k_raw(&DEFAULT_PROFILE_K)
        .into_iter()
        .zip(cfg.k_list(&DEFAULT_PROFILE_K)?)
    {
        let zero = schrodinger::zero_mode_exact(family, k, &grid);
        let modes = [
            PotentialMode::Exact,
            PotentialMode::ExpandedOrderK2,
            PotentialMode::PoschlTellerLimit,
        ]
        .map(|m| QMPotentialSpec::new(family, k, m));
        for (y, z) in grid.nodes().zip(zero.values()) {
            table.push(vec![
                raw,
                y,
                schrodinger::vqm(&modes[0], y),
                schrodinger::vqm(&modes[1], y),
                schrodinger::vqm(&modes[2], y),
                *z,
            ]);
        }
    }
    Ok(Report::new("qm-potential", family, vec![table]))
}

/// Pöschl-Teller bound states next to the exact kink zero modes.
pub fn cmd_pt_modes(cfg: &RunConfig) -> Result<Report> {
    let grid = cfg.grid()?;
    let ks = cfg.k_list(&DEFAULT_PT_MODES_K)?;
    let raw = cfg.k_raw(&DEFAULT_PT_MODES_K);
    let mut columns: Vec<String> = ["y", "v_pt", "psi0", "psi1", "psi0_sq", "psi1_sq"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    columns.extend(raw.iter().map(|k| format!("exact_psi0_sq_k{k}")));
    let zero_modes: Vec<_> = ks
        .iter()
        .map(|&k| schrodinger::zero_mode_exact(DefectFamily::Phi4Kink, k, &grid))
        .collect();
    let pt = QMPotentialSpec::poschl_teller(DefectFamily::Phi4Kink);
    let mut table = Table::with_columns("pt_modes", columns);
    for (i, y) in grid.nodes().enumerate() {
        let p0 = schrodinger::pt_bound_mode(0, y)?;
        let p1 = schrodinger::pt_bound_mode(1, y)?;
        let mut row = vec![y, schrodinger::vqm(&pt, y), p0, p1, p0 * p0, p1 * p1];
        row.extend(zero_modes.iter().map(|z| z.values()[i].powi(2)));
        table.push(row);
    }
    Ok(Report::new("pt-modes", DefectFamily::Phi4Kink, vec![table]))
}

/// Closed-form perturbed kink eigenvalues and their quadrature counterparts.
pub fn cmd_perturb(cfg: &RunConfig) -> Result<Report> {
    let family = DefectFamily::Phi4Kink;
    let raw = cfg.k_raw(&DEFAULT_PERTURB_K);
    let ks = cfg.k_list(&DEFAULT_PERTURB_K)?;

    let mut columns: Vec<String> = [
        "k",
        "omega0_sq",
        "omega1_sq",
        "shift0_quad",
        "shift1_quad",
        "omega1_first_order",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    columns.extend(cfg.half_widths.iter().map(|l| format!("omega2_sq_L{l}")));
    let mut levels = Table::with_columns("levels", columns);
    let density0 = |y: f64| schrodinger::pt_bound_mode(0, y).map(|p| p * p).unwrap_or(0.0);
    let density1 = |y: f64| schrodinger::pt_bound_mode(1, y).map(|p| p * p).unwrap_or(0.0);
    for (&r, &k) in raw.iter().zip(&ks) {
        let shift0 = perturb::first_order_shift_with_tol(density0, family, k, Bound::Infinite, cfg.tol)?;
        let shift1 = perturb::first_order_shift_with_tol(density1, family, k, Bound::Infinite, cfg.tol)?;
        let mut row = vec![
            r,
            perturb::omega_perturbed(LevelSpec::Zero, k)?,
            perturb::omega_perturbed(LevelSpec::One, k)?,
            shift0,
            shift1,
            3.0 + shift1,
        ];
        for &l in &cfg.half_widths {
            row.push(perturb::omega_perturbed(LevelSpec::Two { half_width: l }, k)?);
        }
        levels.push(row);
    }

    let mut factor = Table::new(
        "continuum_factor",
        &["L", "q", "F", "coefficient_closed", "coefficient_quad", "abs_diff"],
    );
    let unit = DeformParam::new(1.0)?;
    for &l in &cfg.half_widths {
        for q in cfg.q_values() {
            let mode = ContinuumMode::new(q, ContinuumBox::new(l)?)?;
            let f = perturb::f_factor(q, l)?;
            let closed = 2.0 * l.tanh() / 15.0 * f;
            let quad = perturb::first_order_shift_with_tol(
                |y| mode.density(y).unwrap_or(0.0),
                family,
                unit,
                Bound::Box(l),
                cfg.tol,
            )?;
            factor.push(vec![l, q, f, closed, quad, (closed - quad).abs()]);
        }
    }
    Ok(Report::new("perturb", family, vec![levels, factor]))
}

/// Numerical spectrum of the exact potential per `k`, with the closed-form
/// kink eigenvalues for comparison, and the `(k, y)` maps of `V` and `ψ₀`.
pub fn cmd_spectrum(cfg: &RunConfig) -> Result<Report> {
    let grid = cfg.grid()?;
    let family = cfg.family;
    let raw = cfg.k_raw(&DEFAULT_SOLVE_K);
    let ks = cfg.k_list(&DEFAULT_SOLVE_K)?;
    let spectra = ordered_map(&ks, |&k| {
        numerics::solve_spectrum(&QMPotentialSpec::exact(family, k), &grid, cfg.levels)
    });

    let mut columns = vec!["k", "level", "omega2_numerical", "box_artifact"];
    if family.is_kink() {
        columns.extend(["omega2_closed", "difference"]);
    }
    let mut eigen = Table::new("spectrum", &columns);
    let mut surfaces = Table::new("surfaces", &["k", "y", "v_qm", "psi0"]);
    for ((&r, &k), spectrum) in raw.iter().zip(&ks).zip(spectra) {
        let spectrum = spectrum?;
        for (level, &w) in spectrum.eigenvalues.iter().enumerate() {
            let mut row = vec![
                r,
                level as f64,
                w,
                if spectrum.is_box_artifact(level) { 1.0 } else { 0.0 },
            ];
            if family.is_kink() {
                let closed = match level {
                    0 => perturb::omega_perturbed(LevelSpec::Zero, k)?,
                    1 => perturb::omega_perturbed(LevelSpec::One, k)?,
                    _ => f64::NAN,
                };
                row.extend([closed, w - closed]);
            }
            eigen.push(row);
        }
        let spec = QMPotentialSpec::exact(family, k);
        let zero = schrodinger::zero_mode_exact(family, k, &grid);
        for (y, z) in grid.nodes().zip(zero.values()) {
            surfaces.push(vec![r, y, schrodinger::vqm(&spec, y), *z]);
        }
    }
    Ok(Report::new("solve", family, vec![eigen, surfaces]))
}

/// `|ψ_q(y)|²` over `(q, y)` per box and `k`, with the perturbed `ω_q²`.
pub fn cmd_continuum(cfg: &RunConfig) -> Result<Report> {
    let raw = cfg.k_raw(&DEFAULT_CONTINUUM_K);
    let ks = cfg.k_list(&DEFAULT_CONTINUUM_K)?;
    let n = cfg.n.unwrap_or(DEFAULT_CONTINUUM_N);
    let mut table = Table::new("continuum", &["L", "k", "q", "y", "density", "omega_q_sq"]);
    for &l in &cfg.half_widths {
        let domain = ContinuumBox::new(l)?;
        let grid = Grid::symmetric(l, n)?;
        for (&r, &k) in raw.iter().zip(&ks) {
            for q in cfg.q_values() {
                let mode = ContinuumMode::new(q, domain)?;
                let omega = perturb::omega_perturbed(LevelSpec::Continuum { q, half_width: l }, k)?;
                for y in grid.nodes() {
                    table.push(vec![l, r, q, y, mode.density(y)?, omega]);
                }
            }
        }
    }
    Ok(Report::new("continuum", DefectFamily::Phi4Kink, vec![table]))
}

/// Every data product with its default settings, keyed by file stem.
pub fn cmd_sweep(cfg: &RunConfig) -> Result<Vec<(String, Report)>> {
    let mut out = Vec::new();
    for family in DefectFamily::ALL {
        let fc = RunConfig { family, ..cfg.clone() };
        out.push((format!("profile_{family}"), cmd_profile(&fc)?));
        out.push((format!("qm_potential_{family}"), cmd_qm_potential(&fc)?));
        out.push((format!("spectrum_{family}"), cmd_spectrum(&fc)?));
    }
    out.push(("mass".into(), cmd_mass(cfg)?));
    out.push(("pt_modes".into(), cmd_pt_modes(cfg)?));
    out.push(("perturb".into(), cmd_perturb(cfg)?));
    out.push(("continuum".into(), cmd_continuum(cfg)?));
    Ok(out)
}

/// Writes a sweep into `dir` (created if missing).
pub fn write_sweep(reports: &[(String, Report)], format: OutputFormat, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let ext = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let mut written = Vec::new();
    for (stem, report) in reports {
        let path = dir.join(format!("{stem}.{ext}"));
        written.extend(report.write(format, Some(&path))?);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> RunConfig {
        RunConfig {
            y_min: Some(-8.0),
            y_max: Some(8.0),
            n: Some(161),
            ..RunConfig::default()
        }
    }

    #[test]
    fn csv_has_one_header_and_17_digits() {
        let mut t = Table::new("t", &["a", "b"]);
        t.push(vec![1.0 / 3.0, -2.0]);
        let csv = t.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "a,b");
        assert_eq!(lines[1], "3.3333333333333331e-1,-2.0000000000000000e0");
        let back: f64 = lines[1].split(',').next().unwrap().parse().unwrap();
        assert_eq!(back, 1.0 / 3.0);
    }

    #[test]
    fn profile_block_sizes() {
        let r = cmd_profile(&small()).unwrap();
        let t = &r.tables[0];
        assert_eq!(t.rows.len(), 4 * 161);
        for k in DEFAULT_PROFILE_K {
            assert_eq!(t.filter("k", k).len(), 161);
        }
    }

    #[test]
    fn validation_rejects_bad_input() {
        let bad = [
            RunConfig {
                k_values: Some(vec![]),
                ..RunConfig::default()
            },
            RunConfig {
                k_values: Some(vec![f64::NAN]),
                ..RunConfig::default()
            },
            RunConfig {
                n: Some(2),
                ..RunConfig::default()
            },
            RunConfig {
                half_widths: vec![-1.0],
                ..RunConfig::default()
            },
            RunConfig {
                q_min: 2.0,
                q_max: 1.0,
                ..RunConfig::default()
            },
            RunConfig {
                levels: 0,
                ..RunConfig::default()
            },
            RunConfig {
                tol: 0.0,
                ..RunConfig::default()
            },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
        assert!(RunConfig::default().validate().is_ok());
    }

    #[test]
    fn sibling_paths() {
        assert_eq!(
            sibling(Path::new("/tmp/a/out.csv"), "surfaces"),
            PathBuf::from("/tmp/a/out.surfaces.csv")
        );
    }

    #[test]
    fn format_parsing() {
        assert_eq!("JSON".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn ordered_map_keeps_order() {
        let v: Vec<usize> = (0..20).collect();
        assert_eq!(ordered_map(&v, |x| x * 2), v.iter().map(|x| x * 2).collect::<Vec<_>>());
    }
}
