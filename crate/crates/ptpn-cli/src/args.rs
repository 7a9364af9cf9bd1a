use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "ptpn", version, about = "Simulate, abstract and verify priced timed Petri nets")]
pub struct Cli {
    /// Optional TOML settings file; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct BoundsArgs {
    /// Maximum backward depth of the bounded search.
    #[arg(long)]
    pub max_depth: Option<usize>,
    /// Maximum number of tokens in a configuration of the bounded search.
    #[arg(long)]
    pub max_tokens: Option<usize>,
    /// Maximum number of configurations a search may process.
    #[arg(long)]
    pub max_configs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct QueryArgs {
    pub net: PathBuf,
    /// Place holding the single initial token.
    #[arg(long)]
    pub from: String,
    /// Place that must be covered.
    #[arg(long)]
    pub to: String,
    #[command(flatten)]
    pub bounds: BoundsArgs,
    /// Precision of the concrete witness replay, in (0, 1/5).
    #[arg(long)]
    pub delta: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a net and print its canonical form and a summary.
    Validate { net: PathBuf },
    /// Replay a JSONL trace and report step costs.
    Simulate {
        net: PathBuf,
        trace: PathBuf,
        /// Also check the delta-form conditions at this delta.
        #[arg(long)]
        delta: Option<String>,
        /// Initial marking literal; defaults to one fresh token in the first place.
        #[arg(long)]
        initial: Option<String>,
    },
    /// Print the region of a marking in delta-form.
    Abstract {
        net: PathBuf,
        marking: String,
        #[arg(long)]
        delta: Option<String>,
    },
    /// Decide whether the target place can be covered within a cost threshold.
    Check {
        #[command(flatten)]
        query: QueryArgs,
        #[arg(long)]
        threshold: u64,
    },
    /// Compute the optimal cost of covering the target place.
    Optimize {
        #[command(flatten)]
        query: QueryArgs,
    },
}
