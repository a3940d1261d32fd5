//! Command-line front end for `lorentz-spin`: scenario files, figure curves
//! as CSV and single-shot queries.

pub mod csv;
pub mod figure;
pub mod scenario;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lorentz_spin::spinmap::choi_min_eigenvalue;
use lorentz_spin::{
    build_map, compat_check, is_cp_criterion, transform_state, wigner_halpern, wigner_oracle,
    Boost, DomainQuantities, KinematicsError, MomentumSpec, Rotation, SpinMapError, ThreeVector,
};
use thiserror::Error;

use crate::csv::{emit_csv, format_real};
use crate::figure::{run_figure, FigureError};
use crate::scenario::{Scenario, ScenarioError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Scenario {
        path: PathBuf,
        source: ScenarioError,
    },
    #[error(transparent)]
    Figure(#[from] FigureError),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Spin(#[from] SpinMapError),
    #[error("write failed: {0}")]
    Output(#[from] io::Error),
}

impl CliError {
    /// 2 for parse and I/O failures, 1 for validation and domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Output(_) => 2,
            CliError::Scenario {
                source: ScenarioError::Parse { .. },
                ..
            } => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lorentz-spin",
    version,
    about = "Lorentz transformations of spin states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Wigner rotation of one momentum under one boost.
    Wigner(WignerArgs),
    /// The spin map a scenario's boost induces on its state.
    Map(ScenarioArg),
    /// The boosted state.
    Transform(ScenarioArg),
    /// Compatibility-domain test of a mean spin.
    Domain(DomainArgs),
    /// Complete positivity of the scenario's spin map.
    Cp(ScenarioArg),
    /// Curve data for figure 1, 2 or 3 as CSV.
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
pub struct WignerArgs {
    #[arg(long, conflicts_with = "velocity", allow_negative_numbers = true)]
    pub rapidity: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub velocity: Option<f64>,
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], default_values_t = [0.0, 1.0, 0.0], allow_negative_numbers = true)]
    pub boost_dir: Vec<f64>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub mom_rapidity: f64,
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], default_values_t = [1.0, 0.0, 0.0], allow_negative_numbers = true)]
    pub mom_dir: Vec<f64>,
    /// Also evaluate the 4×4 matrix oracle.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct ScenarioArg {
    #[arg(long)]
    pub scenario: PathBuf,
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Mean spin to test; defaults to the scenario state's mean spin.
    #[arg(long, num_args = 3, value_names = ["X", "Y", "Z"], allow_negative_numbers = true)]
    pub sv: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub which: u8,
    /// Scenario file; the built-in figure parameters when omitted.
    #[arg(long)]
    pub scenario: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn load_scenario(path: &Path) -> Result<Scenario, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    text.parse().map_err(|source| CliError::Scenario {
        path: path.to_path_buf(),
        source,
    })
}

fn vector(v: &[f64]) -> ThreeVector {
    ThreeVector::new(v[0], v[1], v[2])
}

fn fmt_vec(v: ThreeVector) -> String {
    format!(
        "{} {} {}",
        format_real(v.x),
        format_real(v.y),
        format_real(v.z)
    )
}

fn print_rotation(out: &mut impl Write, name: &str, r: &Rotation) -> io::Result<()> {
    writeln!(out, "{name}.axis = {}", fmt_vec(r.axis()))?;
    writeln!(out, "{name}.angle = {}", format_real(r.angle()))
}

fn print_momentum(out: &mut impl Write, name: &str, p: &MomentumSpec) -> io::Result<()> {
    writeln!(out, "{name}.rapidity = {}", format_real(p.rapidity()))?;
    writeln!(out, "{name}.direction = {}", fmt_vec(p.direction()))
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Wigner(a) => {
            let dir = vector(&a.boost_dir);
            let b = match (a.rapidity, a.velocity) {
                (_, Some(v)) => Boost::from_velocity(v, dir)?,
                (r, None) => Boost::new(r.unwrap_or(0.0), dir)?,
            };
            let p = MomentumSpec::new(a.mom_rapidity, vector(&a.mom_dir))?;
            let (w, _) = wigner_halpern(&b, &p);
            print_rotation(out, "wigner", &w)?;
            if a.oracle {
                let o = wigner_oracle(&b.matrix(), &p.four_momentum())?;
                print_rotation(out, "oracle", &o)?;
                writeln!(out, "distance = {:e}", w.distance(&o))?;
            }
        }
        Command::Map(a) => {
            let sc = load_scenario(&a.scenario)?;
            let state = sc.state();
            let m = build_map(&sc.boost(), &state)?;
            print_rotation(out, "w1", &m.w1())?;
            print_rotation(out, "w2", &m.w2())?;
            writeln!(out, "a = {}", fmt_vec(m.correlation()))?;
            match m.z_axis() {
                Some(z) => writeln!(out, "z = {}", fmt_vec(z))?,
                None => writeln!(out, "z = degenerate")?,
            }
            writeln!(out, "a_perp = {}", fmt_vec(m.correlation_perp()))?;
            writeln!(out, "sigma = {}", fmt_vec(state.mean_spin()))?;
            writeln!(
                out,
                "sigma_boosted = {}",
                fmt_vec(m.apply(state.mean_spin())?)
            )?;
        }
        Command::Transform(a) => {
            let sc = load_scenario(&a.scenario)?;
            let t = transform_state(&sc.boost(), &sc.state())?;
            writeln!(out, "q = {}", format_real(t.q()))?;
            writeln!(out, "r1 = {}", fmt_vec(t.r1()))?;
            writeln!(out, "r2 = {}", fmt_vec(t.r2()))?;
            print_momentum(out, "p1", &t.p1())?;
            print_momentum(out, "p2", &t.p2())?;
            writeln!(out, "sigma = {}", fmt_vec(t.mean_spin()))?;
            writeln!(out, "magnitude = {}", format_real(t.mean_spin().norm()))?;
        }
        Command::Domain(a) => {
            let sc = load_scenario(&a.scenario)?;
            let state = sc.state();
            let m = build_map(&sc.boost(), &state)?;
            let sv = a.sv.as_deref().map(vector).unwrap_or(state.mean_spin());
            writeln!(out, "sv = {}", fmt_vec(sv))?;
            writeln!(out, "compatible = {}", compat_check(&m, sv))?;
            if let Some(q) = DomainQuantities::of(&m, sv) {
                writeln!(out, "lhs = {}", format_real(q.lhs()))?;
                writeln!(out, "rhs = {}", format_real(q.rhs()))?;
            }
        }
        Command::Cp(a) => {
            let sc = load_scenario(&a.scenario)?;
            let m = build_map(&sc.boost(), &sc.state())?;
            writeln!(out, "completely_positive = {}", is_cp_criterion(&m))?;
            writeln!(out, "choi_min_eigenvalue = {:e}", choi_min_eigenvalue(&m))?;
        }
        Command::Figure(a) => {
            let sc = match &a.scenario {
                Some(path) => load_scenario(path)?,
                None => Scenario::figure(a.which).expect("which is 1..=3"),
            };
            let table = run_figure(a.which, &sc)?;
            match &a.out {
                Some(path) => {
                    let io_err = |source| CliError::Io {
                        path: path.clone(),
                        source,
                    };
                    let mut file = io::BufWriter::new(fs::File::create(path).map_err(io_err)?);
                    emit_csv(&table, &mut file).map_err(io_err)?;
                }
                None => emit_csv(&table, out)?,
            }
        }
    }
    Ok(())
}
