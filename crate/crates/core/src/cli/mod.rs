//! Command-line front end: relation spec files in, JSON reports and CSV
//! tables out.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 input error, 3 violated
//! mathematical precondition.

pub mod commands;
pub mod spec;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::boundary::TripletKind;
use crate::error::Error;
use crate::tolerance::ToleranceConfig;

pub use spec::{RelationSpecFile, SpecMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Verification(_) => EXIT_VERIFICATION,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionMismatch(_)
            | Error::InvalidTolerance(_)
            | Error::NotOrthonormal(_)
            | Error::InvalidInput(_) => CliError::Input(e.to_string()),
            Error::NotSelfadjoint(_)
            | Error::ResolventUndefined { .. }
            | Error::Singular { .. }
            | Error::Precondition(_) => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TripletArg {
    Main,
    Basic,
    Tilde,
}

impl From<TripletArg> for TripletKind {
    fn from(t: TripletArg) -> Self {
        match t {
            TripletArg::Main => TripletKind::Main,
            TripletArg::Basic => TripletKind::Basic,
            TripletArg::Tilde => TripletKind::Tilde,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Relative singular-value cutoff for rank decisions.
    #[arg(long = "tol-rank", global = true, default_value_t = 1e-10)]
    pub tol_rank: f64,
    /// Largest principal angle (radians) at which subspaces count as equal.
    #[arg(long = "tol-angle", global = true, default_value_t = 1e-8)]
    pub tol_angle: f64,
    /// Smallest eigenvalue still accepted as positive semidefinite.
    #[arg(long = "psd-floor", global = true, default_value_t = -1e-10, allow_hyphen_values = true)]
    pub psd_floor: f64,
    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write the report or table here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

impl GlobalOpts {
    pub fn tolerance(&self) -> Result<ToleranceConfig, CliError> {
        ToleranceConfig::new(self.tol_rank, self.tol_angle, self.psd_floor).map_err(CliError::from)
    }
}

#[derive(Debug, Parser)]
#[command(name = "linrel", version, about = "Closed linear relations: adjoints, extensions, boundary triplets")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parts, adjoint and symmetry verdicts of a relation (JSON).
    Analyze { spec: PathBuf },
    /// The lift S, its adjoint and distinguished extensions with checks (JSON).
    Extensions { spec: PathBuf },
    /// Weyl function on a grid of spectral parameters (CSV).
    Weyl {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "main")]
        triplet: TripletArg,
        /// Spectral parameter `RE` or `RE,IM`; repeat for a grid.
        /// Defaults to -10, -1, -0.1, i, 1+i, 2.
        #[arg(long = "lambda", value_name = "RE[,IM]", allow_hyphen_values = true)]
        lambdas: Vec<String>,
    },
    /// The extension A_Θ for a boundary parameter read from a spec file (JSON).
    Extend {
        spec: PathBuf,
        /// Spec file of Θ, a relation in the boundary space.
        #[arg(long)]
        theta: PathBuf,
        #[arg(long, value_enum, default_value = "main")]
        triplet: TripletArg,
    },
    /// Lower bounds of A_{-δI} along R = graph(c) (CSV plus a verdict line).
    SemiboundDemo {
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Strictly increasing, comma separated.
        #[arg(long = "c", value_delimiter = ',', default_value = "0,1,2,4,8,16,32")]
        c: Vec<f64>,
    },
    /// Oracle-backed property suite on one relation; exit 1 on any failure.
    Verify { spec: PathBuf },
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}")))
        }
    }
}

fn pretty(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs one parsed invocation and returns the process exit code.
pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let g = &cli.global;
    let cfg = g.tolerance()?;
    match &cli.command {
        Command::Analyze { spec } => {
            let s = RelationSpecFile::load(spec)?;
            emit(&g.out, &pretty(&commands::cmd_analyze(&s, &cfg)?))?;
            Ok(EXIT_OK)
        }
        Command::Extensions { spec } => {
            let s = RelationSpecFile::load(spec)?;
            emit(&g.out, &pretty(&commands::cmd_extensions(&s, &cfg, g.seed)?))?;
            Ok(EXIT_OK)
        }
        Command::Weyl { spec, triplet, lambdas } => {
            let s = RelationSpecFile::load(spec)?;
            let grid = if lambdas.is_empty() {
                commands::default_lambda_grid()
            } else {
                lambdas.iter().map(|l| commands::parse_lambda(l)).collect::<Result<_, _>>()?
            };
            emit(&g.out, &commands::cmd_weyl(&s, (*triplet).into(), &grid, &cfg)?)?;
            Ok(EXIT_OK)
        }
        Command::Extend { spec, theta, triplet } => {
            let s = RelationSpecFile::load(spec)?;
            let t = RelationSpecFile::load(theta)?;
            emit(&g.out, &pretty(&commands::cmd_extend(&s, &t, (*triplet).into(), &cfg)?))?;
            Ok(EXIT_OK)
        }
        Command::SemiboundDemo { delta, c } => {
            let demo = commands::cmd_semibound_demo(*delta, c, &cfg)?;
            emit(&g.out, &demo.csv)?;
            if g.out.is_some() {
                println!("{}", demo.verdict);
            } else {
                eprintln!("{}", demo.verdict);
            }
            Ok(if demo.passed { EXIT_OK } else { EXIT_VERIFICATION })
        }
        Command::Verify { spec } => {
            let s = RelationSpecFile::load(spec)?;
            let report = commands::cmd_verify(&s, &cfg, g.seed)?;
            emit(&g.out, &pretty(&report.json))?;
            for failure in &report.failures {
                eprintln!("verification failed: {failure}");
            }
            Ok(if report.failures.is_empty() { EXIT_OK } else { EXIT_VERIFICATION })
        }
    }
}

/// Entry point of the `linrel` binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
