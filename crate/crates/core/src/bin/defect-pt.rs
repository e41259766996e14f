use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use defect_pt::report::{self, OutputFormat, Report, RunConfig};
use defect_pt::{DefectFamily, Error};

type Runner = fn(&RunConfig) -> Result<Report, Error>;

const EXIT_CONFIG: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

/// Deformed kinks and lumps, their fluctuation spectra and perturbative
/// eigenvalue shifts, emitted as CSV or JSON tables.
#[derive(Parser)]
#[command(name = "defect-pt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field, derivative, energy density and parametric potential per k.
    Profile(CommonArgs),
    /// Topological masses of all families, closed form against quadrature.
    Mass(CommonArgs),
    /// Exact, O(k²) and Pöschl-Teller fluctuation potentials with the zero mode.
    QmPotential(CommonArgs),
    /// Pöschl-Teller bound states next to exact kink zero modes.
    PtModes(CommonArgs),
    /// Closed-form perturbed eigenvalues and quadrature shifts.
    Perturb(CommonArgs),
    /// Finite-difference spectrum of the exact potential.
    Solve(CommonArgs),
    /// Box-normalized continuum densities and perturbed continuum eigenvalues.
    Continuum(CommonArgs),
    /// Run every command with its defaults into the --out directory.
    Sweep(CommonArgs),
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Defect family: phi4, chi4 or sg.
    #[arg(long, default_value = "phi4")]
    family: String,
    /// Comma-separated deformation parameters.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    k: Option<Vec<f64>>,
    /// Left grid edge (default -20).
    #[arg(long, allow_negative_numbers = true)]
    ymin: Option<f64>,
    /// Right grid edge (default 20).
    #[arg(long, allow_negative_numbers = true)]
    ymax: Option<f64>,
    /// Number of grid nodes.
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated box half-widths for continuum modes.
    #[arg(long = "L", value_delimiter = ',', default_value = "5,10")]
    half_widths: Vec<f64>,
    /// Smallest continuum momentum.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    q_min: f64,
    /// Largest continuum momentum.
    #[arg(long, default_value_t = 3.0, allow_negative_numbers = true)]
    q_max: f64,
    /// Number of evenly spaced momenta.
    #[arg(long, default_value_t = 31)]
    q_steps: usize,
    /// Number of eigenvalues to compute.
    #[arg(long, default_value_t = 3)]
    levels: usize,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    format: String,
    /// Output file (a directory for `sweep`); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl CommonArgs {
    fn into_config(self) -> Result<RunConfig, Error> {
        let cfg = RunConfig {
            family: self.family.parse::<DefectFamily>()?,
            k_values: self.k,
            y_min: self.ymin,
            y_max: self.ymax,
            n: self.n,
            half_widths: self.half_widths,
            q_min: self.q_min,
            q_max: self.q_max,
            q_steps: self.q_steps,
            levels: self.levels,
            tol: self.tol,
            format: self.format.parse::<OutputFormat>()?,
            out: self.out,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn run(command: Command) -> Result<(), Error> {
    let (args, runner): (CommonArgs, Runner) = match command {
        Command::Profile(a) => (a, report::cmd_profile),
        Command::Mass(a) => (a, report::cmd_mass),
        Command::QmPotential(a) => (a, report::cmd_qm_potential),
        Command::PtModes(a) => (a, report::cmd_pt_modes),
        Command::Perturb(a) => (a, report::cmd_perturb),
        Command::Solve(a) => (a, report::cmd_spectrum),
        Command::Continuum(a) => (a, report::cmd_continuum),
        Command::Sweep(a) => {
            let cfg = a.into_config()?;
            let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("out"));
            let reports = report::cmd_sweep(&cfg)?;
            for path in report::write_sweep(&reports, cfg.format, &dir)? {
                eprintln!("wrote {}", path.display());
            }
            return Ok(());
        }
    };
    let cfg = args.into_config()?;
    let report = runner(&cfg)?;
    for path in report.write(cfg.format, cfg.out.as_deref())? {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(err)) if err.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(if err.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_CONFIG
            })
        }
    }
}
