//! `gordian`: Conway invariants, Gordian-graph distances, finite universes and
//! hyperbolicity audits from the command line.
//!
//! Exit status: 0 on success, 1 on an input or resource error, 2 on a usage
//! error, 3 when `--strict` is set and an audit bound fails.

mod commands;
mod plot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gordian::audit::DEFAULT_SEED;

pub const CLI_SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "gordian", version, about = "Conway invariants and the (Conway, Delta) Gordian graph")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Write the main output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Output format. Defaults to `svg` for `plot` and `json` otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Exit with status 3 when an audit bound fails.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Resource cap of the command: skein crossings for `invariant`,
    /// `distance` and `twist`; vertices for `universe` and `plot`.
    #[arg(long, global = true, env = "GORDIAN_CAP", value_name = "N")]
    pub cap: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
    Svg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Conway polynomial, a2 and component count of a diagram.
    Invariant(InvariantArgs),
    /// Delta-Gordian distance and crossing-change bounds between two knots.
    Distance(DistanceArgs),
    /// Build a finite universe of Conway classes.
    Universe(UniverseArgs),
    /// Audit a universe file.
    #[command(subcommand)]
    Audit(AuditCommand),
    /// Random walk of Delta-moves, checking that a2 changes by one per step.
    DeltaWalk(DeltaWalkArgs),
    /// Static picture of a universe.
    Plot(PlotArgs),
    /// The twist-knot braid with Conway polynomial 1 + m z^2.
    Twist(TwistArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DiagramInput {
    /// PD code, e.g. "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long, allow_hyphen_values = true)]
    pub pd: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub pd_file: Option<PathBuf>,
    /// Braid word, e.g. "1 1 1" or "B3: 1 -2 1 -2".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Option<String>,
    #[arg(long, value_name = "PATH")]
    pub braid_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct InvariantArgs {
    #[command(flatten)]
    pub input: DiagramInput,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    /// A class in compact list form, e.g. "[1,0,1]". Give two inputs in total.
    #[arg(long, allow_hyphen_values = true)]
    pub class: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub braid: Vec<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub pd: Vec<String>,
}

#[derive(Args, Debug)]
pub struct UniverseArgs {
    /// Range of a2 values, `MIN:MAX`.
    #[arg(long, allow_hyphen_values = true, value_name = "MIN:MAX")]
    pub a2: String,
    /// Number of even coefficients recorded (a2 included).
    #[arg(long)]
    pub depth: u32,
    /// Bound on |a4|, |a6|, ...
    #[arg(long)]
    pub coeff: u32,
}

#[derive(Subcommand, Debug)]
pub enum AuditCommand {
    /// Slimness of geodesic triangles.
    Slim(AuditArgs),
    /// Gromov four-point condition.
    Fourpoint(AuditArgs),
    /// Quasi-isometry of a2 onto the line.
    Qi(AuditArgs),
    /// Absence of 3-cliques.
    TriangleFree(AuditArgs),
}

#[derive(Args, Debug, Clone)]
pub struct AuditArgs {
    #[arg(long, value_name = "PATH")]
    pub universe: PathBuf,
    #[arg(long, conflicts_with = "sampled")]
    pub exhaustive: bool,
    #[arg(long)]
    pub sampled: bool,
    #[arg(long, default_value_t = gordian::audit::DEFAULT_SAMPLE_SIZE)]
    pub sample_size: u64,
    /// Geodesics enumerated per corner pair (slim only).
    #[arg(long, default_value_t = gordian::metric::DEFAULT_GEODESIC_CAP)]
    pub geodesic_cap: usize,
    /// Configurations an exhaustive run may examine.
    #[arg(long, default_value_t = gordian::audit::DEFAULT_BUDGET)]
    pub budget: u64,
    /// Fail instead of sampling when an exhaustive run is over budget.
    #[arg(long)]
    pub no_fallback: bool,
}

#[derive(Args, Debug)]
pub struct DeltaWalkArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub braid: String,
    #[arg(long, default_value_t = 10)]
    pub steps: u64,
    /// Stop before the word grows past this many letters.
    #[arg(long, default_value_t = 4096)]
    pub max_letters: usize,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long, value_name = "PATH")]
    pub universe: PathBuf,
    /// Corners of a geodesic triangle to highlight, as three class lists.
    #[arg(long, num_args = 3, value_names = ["A", "B", "C"], allow_hyphen_values = true)]
    pub highlight_triangle: Option<Vec<String>>,
}

#[derive(Args, Debug)]
pub struct TwistArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub m: i32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
