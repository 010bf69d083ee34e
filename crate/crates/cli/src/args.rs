use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use divlab::budget::DEFAULT_BUDGET_BYTES;

#[derive(Debug, Parser)]
#[command(name = "divlab", version, about = "Exact checks for intersecting set families and their diversity")]
pub struct Cli {
    /// Worker threads for parallel scans; output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Memory budget for explicit enumerations.
    #[arg(long, global = true, env = "DIVLAB_BUDGET_BYTES", default_value_t = DEFAULT_BUDGET_BYTES)]
    pub budget_bytes: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a family, write it as .sfam and report its properties.
    Construct(ConstructArgs),
    /// Check properties of a family read from a .sfam file.
    Verify(VerifyArgs),
    /// Evaluate the closed-form counts and bounds exactly.
    Bounds(BoundsArgs),
    /// Search for high-diversity maximal intersecting families.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Build PG(2,q) and check its incidence axioms.
    Plane(PlaneArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Fk,
    Qk,
    Pk,
    Ai,
    A,
    Rk,
    PlaneLines,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Output {
    /// Write the family here as .sfam.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub kind: Kind,
    #[arg(long)]
    pub k: Option<i64>,
    #[arg(long)]
    pub q: Option<i64>,
    #[arg(long)]
    pub i: Option<i64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Intersecting,
    Regular,
    Upset,
    Diversity,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Properties to check (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    pub checks: Vec<Check>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, required_unless_present = "q", conflicts_with = "q")]
    pub k: Option<i64>,
    #[arg(long)]
    pub q: Option<i64>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// Exhaustive maximum over all one-per-pair choices (n <= 5).
    Exhaustive {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Pair-swap hill-climb from a maximal intersecting family.
    Hillclimb(HillclimbArgs),
}

#[derive(Debug, Args)]
pub struct HillclimbArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 10_000)]
    pub steps: u64,
    /// Start family (.sfam); defaults to Q_k with n = 2k+1.
    #[arg(long)]
    pub start: Option<PathBuf>,
    #[arg(long, default_value_t = divlab::search::DEFAULT_PATIENCE)]
    pub patience: u64,
    /// Disable whole-orbit swap proposals.
    #[arg(long)]
    pub no_orbit_moves: bool,
    /// Propose the line-containing layers of PG(2,q) as blocks (n = q^2+q+1).
    /// Turns orbit moves off.
    #[arg(long)]
    pub plane_blocks: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct PlaneArgs {
    #[arg(long)]
    pub q: i64,
    /// Write the lines as .sfam.
    #[arg(long)]
    pub emit_lines: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
}
