use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edgedepth::enumerate::GraphClass;

#[derive(Parser, Debug)]
#[command(
    name = "edgedepth",
    version,
    about = "Depth, dimension and projective dimension of edge ideals"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Characteristic of the coefficient field for homology (a prime).
    #[arg(long, global = true, default_value_t = 2)]
    pub field: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON-lines checkpoint for `survey` and `compare`.
    #[arg(long, global = true)]
    pub checkpoint: Option<PathBuf>,
    /// Worker threads; 1 runs everything sequentially.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Compute depth by two independent routes and fail on disagreement.
    #[arg(long, global = true)]
    pub paranoid: bool,
    /// Seed for randomized searches.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetName {
    Cstar,
    Cminus,
    Cprime,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Invariants of graphs given as graph6 or `n; i-j,...` edge lists
    /// (arguments, or one per line on stdin).
    Analyze {
        graphs: Vec<String>,
        /// Always use the homology route.
        #[arg(long)]
        hochster: bool,
    },
    /// Closed-form pair sets C*(n), C-(n), C'(n).
    Pairs {
        #[arg(short)]
        n: usize,
        #[arg(long, value_enum, default_value_t = SetName::Cstar)]
        set: SetName,
    },
    /// A graph with the given (depth, dim), verified.
    Witness {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        a: usize,
        #[arg(short)]
        b: usize,
        /// Random search, for n beyond exhaustive reach.
        #[arg(long)]
        hunt: bool,
        #[arg(long, default_value_t = 100_000)]
        tries: usize,
    },
    /// Realized (depth, dim) pairs over all connected graphs of a class.
    Survey(SurveyArgs),
    /// Diff realized pairs against a target set.
    Compare {
        /// A survey result (or PairSet) JSON file.
        #[arg(long, conflicts_with = "n", required_unless_present = "n")]
        result: Option<PathBuf>,
        /// Survey this many vertices now.
        #[arg(short)]
        n: Option<usize>,
        #[arg(long, default_value = "all")]
        class: GraphClass,
        /// cstar, cminus, or a PairSet JSON file.
        #[arg(long, default_value = "cstar")]
        target: String,
    },
    /// Largest strongly and semi-strongly disjoint bouquet families.
    Bouquet { graph: String },
    /// Run the acceptance suite.
    Check {
        #[arg(long, required = true)]
        paper: bool,
        /// Skip the n = 9 all-graphs survey.
        #[arg(long)]
        skip_stretch: bool,
        /// Run only these checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Args, Debug)]
pub struct SurveyArgs {
    #[arg(short)]
    pub n: usize,
    #[arg(long, default_value = "all")]
    pub class: GraphClass,
    /// Read graph6 lines from this file (`-` for stdin) instead of generating.
    #[arg(long)]
    pub from_graph6: Option<PathBuf>,
}
