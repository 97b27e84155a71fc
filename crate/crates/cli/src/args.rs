use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "symineq",
    version,
    about = "Exact checks of the harmonic-mean weighted subset-product inequality"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Largest vector length accepted without complaint.
    #[arg(long = "max-n", global = true, default_value_t = 20)]
    pub max_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the main inequality on one or more vectors.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        k: KSelector,
    },
    /// Check one of the supporting lemmas.
    Lemma {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        which: Lemma,
    },
    /// Evaluate both sides of the rearrangement identity.
    Identity {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        k: usize,
    },
    /// Seeded randomized campaign through the exact checker.
    Fuzz(FuzzArgs),
    /// Search the simplex for the largest lhs/rhs ratio.
    Maximize(MaximizeArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Inline vector, e.g. `1,2,3/2,0.5`.
    #[arg(long, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// One vector per line; `#` starts a comment.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
pub struct KSelector {
    #[arg(long)]
    pub k: Option<usize>,
    /// Every k in 1..=n (the default).
    #[arg(long = "all-k")]
    pub all_k: bool,
    /// Only 1 < k < n.
    #[arg(long = "interior-k")]
    pub interior_k: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    Reciprocal,
    Pairwise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistributionName {
    UniformInt,
    Rational,
    NearUniform,
    Constant,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    /// Vector length, `N` or an inclusive range `A..B`.
    #[arg(long, default_value = "2..8")]
    pub n: String,
    /// `all`, `interior`, or a fixed k.
    #[arg(long, default_value = "all")]
    pub k: String,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long = "dist", value_enum, default_value_t = DistributionName::UniformInt)]
    pub distribution: DistributionName,
    /// Bound on integers, numerators and denominators.
    #[arg(long = "max-value", default_value_t = 100)]
    pub max_value: u64,
    /// Perturbation size for `near-uniform`.
    #[arg(long, default_value = "1/1000")]
    pub epsilon: String,
}

#[derive(Debug, Args)]
pub struct MaximizeArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[arg(long = "max-iter", default_value_t = 10_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1.0)]
    pub step: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Starting point as comma-separated floats; random when absent.
    #[arg(long)]
    pub start: Option<String>,
}
