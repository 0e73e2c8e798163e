//! Command-line front end: argument handling, input ingestion and JSON reports.

pub mod commands;
pub mod input;
pub mod parse;
pub mod report;

use clap::{Parser, Subcommand};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] grassgeo_core::Error),
}

impl CliError {
    /// 2 for bad input, 3 for exhausted budgets, 1 for anything else.
    pub fn exit_code(&self) -> i32 {
        use grassgeo_core::Error as E;
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                E::BudgetExceeded(_) | E::ProbeBudget(_) => 3,
                E::InvalidField(_)
                | E::Parse(_)
                | E::FieldMismatch(_)
                | E::ShapeMismatch(_)
                | E::RingMismatch(_)
                | E::NonHomogeneous(_)
                | E::UnsupportedPresentation(_)
                | E::OutOfScope(_)
                | E::Precondition(_)
                | E::RankDeficient(_) => 2,
                _ => 1,
            },
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "grassgeo",
    version,
    about = "Rank-one tangency structures of subvarieties of Grassmannians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// `q` or `fp:<prime>`.
    #[arg(long, global = true, default_value = "fp:32003")]
    pub field: String,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of samples; each command has its own default.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    #[arg(long, global = true)]
    pub ell: Option<usize>,
    #[arg(long, global = true)]
    pub m: Option<usize>,
    #[arg(long, global = true)]
    pub k: Option<usize>,
    /// Variety JSON file.
    #[arg(long, global = true)]
    pub variety: Option<String>,
    /// Homogeneous polynomial in x0, x1, ….
    #[arg(long, global = true)]
    pub f: Option<String>,
    /// Curve or family JSON file.
    #[arg(long, global = true)]
    pub input: Option<String>,
    /// Include wall time in the report (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Chow form of a variety (ℓ = codim − 1).
    Chow,
    /// Hurwitz form of a variety (ℓ = codim).
    Hurwitz,
    /// Polar degrees δ_ℓ for all ℓ.
    PolarDegrees,
    /// Seeded samples of 𝒢_ℓ(X) with conormal spaces.
    SampleAssociated,
    /// Coisotropy classification of 𝒢_ℓ(X), or isotropy of a family from --input.
    Classify,
    /// Contact-line varieties 𝓛_m of a hypersurface.
    Contact,
    /// Osculating spaces of a polynomial curve.
    Osc,
    /// Dual curve of a polynomial curve.
    DualCurve,
    /// Dual variety by elimination.
    Dualize,
    /// α/β classification of a strongly isotropic family.
    ClassifyFamily,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Chow => "chow",
            Command::Hurwitz => "hurwitz",
            Command::PolarDegrees => "polar-degrees",
            Command::SampleAssociated => "sample-associated",
            Command::Classify => "classify",
            Command::Contact => "contact",
            Command::Osc => "osc",
            Command::DualCurve => "dual-curve",
            Command::Dualize => "dualize",
            Command::ClassifyFamily => "classify-family",
        }
    }
}

/// Runs a command and returns the exit code with the rendered report.
pub fn run(cli: &Cli) -> (i32, Result<String, CliError>) {
    let start = std::time::Instant::now();
    match commands::dispatch(cli) {
        Ok(mut report) => {
            if cli.timing {
                report.wall_time_ms = Some(start.elapsed().as_millis());
            }
            let code = if report.all_pass() { 0 } else { 1 };
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            (code, Ok(text))
        }
        Err(e) => (e.exit_code(), Err(e)),
    }
}
