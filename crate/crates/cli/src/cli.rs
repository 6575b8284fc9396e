use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dplab_core::montecarlo::Target;
use dplab_core::sort::Algorithm;

pub const DEFAULT_SEED: u64 = 42;

/// Exact tables, brute-force oracles, Monte Carlo experiments and
/// verification suites for dual-pivot quicksort.
#[derive(Debug, Parser)]
#[command(name = "dplab", version, about)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads; defaults to the number of available cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate exact expected costs for a range of input sizes.
    Exact {
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Average an algorithm over all n! input orders (n <= 8).
    Bruteforce {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        algo: AlgoArg,
    },
    /// Seeded Monte Carlo estimate against the exact value.
    Simulate {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        /// Master seed; falls back to DPLAB_SEED, then 42.
        #[arg(long, env = "DPLAB_SEED", default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum)]
        target: TargetArg,
    },
    /// Run a verification suite; exits with status 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgoArg {
    Count,
    Clairvoyant,
    Classic,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Count => Algorithm::Count,
            AlgoArg::Clairvoyant => Algorithm::Clairvoyant,
            AlgoArg::Classic => Algorithm::Classic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    SortCount,
    SortClairvoyant,
    PathZeros,
    PathDistribution,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::SortCount => Target::SortCount,
            TargetArg::SortClairvoyant => Target::SortClairvoyant,
            TargetArg::PathZeros => Target::PathZeros,
            TargetArg::PathDistribution => Target::PathDistribution,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identity,
    Distribution,
    Optimality,
    Urn,
    Dominance,
}
