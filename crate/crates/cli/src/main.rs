//! `cwidth`: analyze convex curves as constant-width curves of a Minkowski plane.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;
mod spec;

use spec::CurveSpec;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid spec: {0}")]
    BadSpec(String),
    #[error("convexity check failed: {0}")]
    Convexity(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) | CliError::Io(_) => 1,
            CliError::BadSpec(_) => 2,
            CliError::Convexity(_) => 3,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cwidth", version, about = "Area evolutes, involutes and central points of convex curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose the curve and write report.json, per-angle CSV series and figure.svg.
    Analyze(Common),
    /// Iterate involutes and write trace.csv, central_point.json and iteration.svg.
    Iterate {
        #[command(flatten)]
        common: Common,
        /// Maximum number of full steps.
        #[arg(short = 'k', default_value_t = 500)]
        k: usize,
        /// Stop once the bounding-box diameter of M_i falls below this.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Run the invariant suite and print a pass/fail table.
    Verify {
        /// Curve spec; omit with --random.
        spec: Option<PathBuf>,
        /// Check a seeded random convex curve instead of a spec file.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the grid size.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Write figure.svg, split.svg and iteration.svg.
    Render(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Curve spec (JSON).
    spec: PathBuf,
    /// Output directory.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override the grid size.
    #[arg(long)]
    grid: Option<usize>,
}

impl Common {
    fn curve(&self) -> Result<cwidth::ConvexCurve, CliError> {
        CurveSpec::load(&self.spec)?.build(self.grid)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze(c) => commands::analyze(&c.curve()?, &c.out),
        Command::Iterate { common, k, tol } => commands::iterate(&common.curve()?, &common.out, k, tol),
        Command::Verify {
            spec,
            random,
            seed,
            grid,
        } => {
            let gamma = match (spec, random) {
                (Some(_), true) => {
                    return Err(CliError::BadSpec("give either a spec file or --random, not both".into()))
                }
                (Some(path), false) => CurveSpec::load(&path)?.build(grid)?,
                (None, true) => spec::random_curve(grid.unwrap_or(cwidth::periodic::DEFAULT_GRID), seed)?,
                (None, false) => return Err(CliError::BadSpec("missing spec file (or --random)".into())),
            };
            commands::verify(&gamma)
        }
        Command::Render(c) => commands::render(&c.curve()?, &c.out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("cwidth: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
