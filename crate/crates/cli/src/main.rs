//! `cpn`: build projector towers from polynomial seeds, verify the exact
//! identities of their surfaces, print eigenvalue spectra and run the
//! numerical residual studies.

mod seed;
mod tower_json;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cpn_surfaces::numeric::{
    action_study, eigen_cross_check, random_regular_points, residual_study, ActionStudy, EigenCheck, GridSpec,
    NumericTower, ResidualStudy, PROJECTOR_DRIFT, UNITARITY_DRIFT,
};
use cpn_surfaces::report::{verify_seed, Report};
use cpn_surfaces::sigma::build_tower;
use cpn_surfaces::spectrum::figure_data;
use cpn_surfaces::{Error, Exec};
use num_complex::Complex64;
use serde::Serialize;

#[derive(Parser)]
#[command(name = "cpn", version, about = "Projector towers and soliton surfaces of CP^(N-1) sigma models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the projector tower of a seed and write it as JSON.
    Tower {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every exact check on the tower and its surfaces.
    Verify {
        #[arg(long)]
        seed: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Eigenvalue set S(n) with its ladder figure.
    Spectrum {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-difference residual study, eigenvalue cross-check and action quadrature.
    Numeric {
        #[arg(long)]
        seed: PathBuf,
        /// Grid centre as `RE,IM`.
        #[arg(long, default_value = "0.3,0.2", value_parser = parse_complex, allow_hyphen_values = true)]
        grid_center: Complex64,
        /// Half-width of the square grid.
        #[arg(long, default_value_t = 1.0)]
        grid_width: f64,
        /// Points per grid axis.
        #[arg(long, default_value_t = 41)]
        samples: usize,
        /// Middle step of the three finite-difference steps `2h, h, h/2`.
        #[arg(long, default_value_t = 1e-3)]
        fd_step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Svg,
    Json,
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s.split_once(',').ok_or_else(|| format!("expected RE,IM, got `{s}`"))?;
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}"));
    Ok(Complex64::new(parse(re)?, parse(im)?))
}

/// An error with its exit code.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: String) -> Self {
        Self { code: 1, message }
    }

    fn invariant(message: String) -> Self {
        Self { code: 3, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::ZeroSeed
            | Error::DimensionTooSmall(_)
            | Error::LengthMismatch { .. }
            | Error::NotHolomorphic(_)
            | Error::CommonFactor(_)
            | Error::IndexOutOfRange { .. }
            | Error::InvalidGrid(_) => 1,
            Error::Annihilated
            | Error::PrematureAnnihilation { .. }
            | Error::DegenerateProjector
            | Error::PoleAtPoint(_)
            | Error::RankDeficient(_) => 2,
            Error::PropositionViolated(_)
            | Error::NotHermitian(_)
            | Error::NoConvergence(_)
            | Error::StencilOutOfGrid(_) => 3,
        };
        Self { code, message: e.to_string() }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| Failure::input(e.to_string()))
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable report");
    s.push('\n');
    s
}

fn cmd_tower(seed: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let tower = build_tower(&seed::read_seed(seed)?)?;
    emit(out, &to_json(&tower_json::TowerFile::from(&tower)))
}

fn report_table(r: &Report) -> String {
    let mut s = format!("seed {:?}  (n = {})\n", r.seed, r.n);
    for c in &r.checks {
        let verdict = if c.passed { "pass" } else { "FAIL" };
        s += &format!("{verdict}  {:<26} {:>8.3}s  {}\n", c.name, c.seconds, c.detail);
    }
    s += &format!("{} of {} checks passed in {:.3}s\n", r.checks.iter().filter(|c| c.passed).count(), r.checks.len(), r.seconds);
    s
}

fn cmd_verify(seed: &Path, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let report = verify_seed(&seed::read_seed(seed)?, Exec::default())?;
    let text = match format {
        Format::Json => to_json(&report),
        Format::Table => report_table(&report),
        Format::Csv | Format::Svg => return Err(Failure::input("verify supports --format table or json".into())),
    };
    emit(out, &text)?;
    if report.all_passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name).collect();
        Err(Failure::invariant(format!("failed checks: {}", names.join(", "))))
    }
}

fn cmd_spectrum(n: usize, format: Format, out: Option<&Path>) -> Result<(), Failure> {
    let fig = figure_data(n)?;
    let text = match format {
        Format::Table => fig.to_table(),
        Format::Csv => fig.to_csv(),
        Format::Svg => fig.to_svg(),
        Format::Json => to_json(&fig),
    };
    emit(out, &text)
}

/// Resolutions of the action quadrature.
const ACTION_RESOLUTIONS: [usize; 3] = [64, 128, 256];
const EIGEN_POINTS: usize = 5;
const EIGEN_TOLERANCE: f64 = 1e-10;

#[derive(Serialize)]
struct NumericReport {
    n: usize,
    grid: GridSpec,
    residuals: ResidualStudy,
    ratios_in_range: bool,
    forms_agree: bool,
    nu_agrees: bool,
    eigenvalues: Vec<EigenCheck>,
    eigenvalues_match: bool,
    /// One study per projector of the tower.
    action: Vec<ActionStudy>,
    passed: bool,
}

fn cmd_numeric(seed: &Path, grid: GridSpec, out: Option<&Path>) -> Result<(), Failure> {
    let exec = Exec::default();
    let tower = build_tower(&seed::read_seed(seed)?)?;
    let nt = NumericTower::new(&tower, exec);
    let h = grid.h;
    let residuals = residual_study(&nt, &grid, &[2.0 * h, h, 0.5 * h], exec)?;
    let points = random_regular_points(&nt, &grid, EIGEN_POINTS, 0x5eed);
    let eigenvalues = eigen_cross_check(&nt, &points, exec)?;
    let eigenvalues_match = eigenvalues.iter().all(|c| {
        let (low, mid, top) = c.multiplicities;
        c.max_deviation < EIGEN_TOLERANCE && (low, mid, top) == (c.k, 1, tower.n() - 1 - c.k)
    });
    let action = tower
        .projectors()
        .iter()
        .map(|p| action_study(p, &ACTION_RESOLUTIONS, exec))
        .collect::<Result<Vec<_>, _>>()?;
    let (ratios_in_range, forms_agree, nu_agrees) =
        (residuals.ratios_in_range(), residuals.forms_agree(), residuals.nu_agrees());
    let drift_ok = residuals.frame_unitarity_drift < UNITARITY_DRIFT && residuals.frame_projector_drift < PROJECTOR_DRIFT;
    let passed = ratios_in_range && forms_agree && nu_agrees && drift_ok && eigenvalues_match;
    let report = NumericReport {
        n: tower.n(),
        grid,
        residuals,
        ratios_in_range,
        forms_agree,
        nu_agrees,
        eigenvalues,
        eigenvalues_match,
        action,
        passed,
    };
    emit(out, &to_json(&report))?;
    if passed {
        Ok(())
    } else {
        Err(Failure::invariant("numeric study outside its tolerances".into()))
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Tower { seed, out } => cmd_tower(&seed, out.as_deref()),
        Command::Verify { seed, format, out } => cmd_verify(&seed, format, out.as_deref()),
        Command::Spectrum { n, format, out } => cmd_spectrum(n, format, out.as_deref()),
        Command::Numeric { seed, grid_center, grid_width, samples, fd_step, out } => {
            let grid = GridSpec::new(grid_center, grid_width, samples, fd_step)?;
            cmd_numeric(&seed, grid, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("cpn: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
