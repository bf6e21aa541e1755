use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "hfskit", version, about = "Flat and hierarchical fuzzy rule systems: evaluation, rule analytics and interpretability")]
pub struct Cli {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a system on crisp inputs
    Eval(EvalArgs),
    /// Rule counts of a system, or of the closed-form formulas
    Rules(RulesArgs),
    /// Interpretability index of a system
    Index(IndexArgs),
    /// Compare a flat system with a hierarchy over the same inputs
    Compare(CompareArgs),
    /// Re-run the bundled case-study checks
    Reproduce(ReproduceArgs),
    /// Sample the membership functions of one variable as CSV
    Plot(PlotArgs),
}

#[derive(Debug, Args)]
pub struct SystemArg {
    /// Definition file (.hfs); bundled file names resolve without a path
    #[arg(long, value_name = "FILE")]
    pub system: PathBuf,
    /// System or hierarchy name inside the file
    #[arg(long, value_name = "ID")]
    pub name: Option<String>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[command(flatten)]
    pub target: SystemArg,
    /// Comma-separated assignments, e.g. Q1=3,Q2=7.5
    #[arg(long, value_name = "K=V,...")]
    pub inputs: String,
    /// Include fired rules and intermediate values
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct RulesArgs {
    #[arg(long, value_name = "FILE", required_unless_present = "formula", conflicts_with = "formula")]
    pub system: Option<PathBuf>,
    #[arg(long, value_name = "ID", requires = "system")]
    pub name: Option<String>,
    /// Evaluate the flat and serial-hierarchy formulas instead
    #[arg(long, requires_all = ["n", "m"])]
    pub formula: bool,
    /// Number of inputs
    #[arg(long)]
    pub n: Option<u32>,
    /// Terms per input
    #[arg(long)]
    pub m: Option<u64>,
}

#[derive(Debug, Args)]
pub struct IndexArgs {
    #[command(flatten)]
    pub target: SystemArg,
    #[command(flatten)]
    pub index: IndexOptions,
}

#[derive(Debug, Args)]
pub struct IndexOptions {
    /// Layer weights, one per layer, summing to 1
    #[arg(long, value_name = "W1,W2,...")]
    pub weights: Option<String>,
    /// JSON file of per-subsystem base indices
    #[arg(long, value_name = "FILE")]
    pub external_indices: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Flat system as FILE:ID
    #[arg(long, value_name = "FILE:ID")]
    pub flat: String,
    /// Hierarchy as FILE:ID (a flat system is treated as a one-node hierarchy)
    #[arg(long, value_name = "FILE:ID")]
    pub hfs: String,
    /// Measure crisp disagreement over a grid with this step
    #[arg(long, value_name = "STEP")]
    pub grid: Option<f64>,
    /// Evaluate grid points on all cores
    #[arg(long, requires = "grid")]
    pub parallel: bool,
    #[command(flatten)]
    pub index: IndexOptions,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    /// Read the case-study definitions from this directory instead of the embedded copies
    #[arg(long, value_name = "DIR")]
    pub bundle_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[command(flatten)]
    pub target: SystemArg,
    #[arg(long, value_name = "ID")]
    pub variable: String,
    #[arg(long, default_value_t = 201)]
    pub samples: usize,
}
