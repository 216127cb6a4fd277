use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(
    name = "tbn",
    version,
    about = "Divisors, ranks and Brill-Noether loci on metric graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Cap on lattice divisors enumerated (or multisets, for oracle checks).
    #[arg(long, global = true, env = "TBN_BUDGET")]
    pub budget: Option<u128>,
    /// Worker threads for parallel scans.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout. For `gen`, the graph file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    /// Tab-separated table; `sweep` only.
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    LoopOfLoops,
    DegenerateLoopOfLoops,
    Yu,
    ChainOfLoops,
    GenericChainOfLoops,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepKind {
    /// Single edges t*(5,4,3), unit doubled edges; t = 0 contracts the singles.
    Lol4Scaled,
    /// The graph given by --graph for every t.
    Constant,
}

#[derive(Debug, Args, Serialize)]
pub struct GraphArg {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct Rdq {
    #[arg(short = 'r')]
    pub r: usize,
    #[arg(short = 'd')]
    pub d: i64,
    #[arg(short = 'q', default_value_t = 4)]
    pub q: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build a graph from a named family.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Genus, for loops of loops.
        #[arg(long)]
        g: Option<usize>,
        /// Single-edge lengths, comma separated.
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<String>,
        /// Doubled-edge lengths, comma separated.
        #[arg(long, value_delimiter = ',')]
        pairs: Vec<String>,
        /// Chain-of-loops arcs as `a:b` pairs, comma separated.
        #[arg(long, value_delimiter = ',')]
        arcs: Vec<String>,
        /// Chain-of-loops bridge lengths, comma separated.
        #[arg(long, value_delimiter = ',')]
        bridges: Vec<String>,
    },
    Genus {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
    },
    Canonical {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
    },
    /// Reduced form of a divisor at a basepoint.
    Reduce {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
        /// Vertex name or `edge@offset`; defaults to the canonical basepoint.
        #[arg(long)]
        basepoint: Option<String>,
    },
    /// Linear equivalence of two divisors.
    Equiv {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[arg(long)]
        d1: PathBuf,
        #[arg(long)]
        d2: PathBuf,
    },
    Rank {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
        /// Also compute the rank on a subdivision.
        #[arg(long)]
        oracle: bool,
        /// Subdivision resolution for --oracle; defaults to the divisor's own.
        #[arg(short = 'q')]
        q: Option<u64>,
    },
    /// Rank restricted to test divisors supported on a set.
    Arank {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
        /// Points (vertex names or `edge@offset`), comma separated; defaults
        /// to the vertex closure set.
        #[arg(long, value_delimiter = ',')]
        set: Vec<String>,
    },
    /// Effective divisors equivalent to D with support on the lattice.
    Linsys {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
        #[arg(short = 'q', default_value_t = 4)]
        q: u64,
    },
    #[command(name = "scan-wrd")]
    ScanWrd {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        #[serde(flatten)]
        rdq: Rdq,
    },
    #[command(name = "bn-rank")]
    BnRank {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        #[serde(flatten)]
        rdq: Rdq,
        /// Re-check the witness against every complement.
        #[arg(long)]
        verify: bool,
    },
    Sweep {
        #[arg(long, value_enum)]
        family: SweepKind,
        #[arg(long)]
        graph: Option<PathBuf>,
        /// Parameters, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        ts: Vec<String>,
        #[command(flatten)]
        #[serde(flatten)]
        rdq: Rdq,
    },
    /// Compare metric and finite ranks on random lattice divisors.
    #[command(name = "cross-check")]
    CrossCheck {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, allow_hyphen_values = true)]
        min_degree: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        max_degree: Option<i64>,
        #[arg(short = 'q', default_value_t = 2)]
        q: u64,
    },
    /// Case analysis for rank(v1 + w1 + w) on a genus-4 loop of loops.
    #[command(name = "w13-case")]
    W13Case {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        /// Vertex name or `edge@offset`.
        #[arg(long)]
        point: String,
    },
    /// Abel-Jacobi image of a divisor.
    Aj {
        #[command(flatten)]
        #[serde(flatten)]
        graph: GraphArg,
        #[arg(long)]
        divisor: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Genus { .. } => "genus",
            Command::Canonical { .. } => "canonical",
            Command::Reduce { .. } => "reduce",
            Command::Equiv { .. } => "equiv",
            Command::Rank { .. } => "rank",
            Command::Arank { .. } => "arank",
            Command::Linsys { .. } => "linsys",
            Command::ScanWrd { .. } => "scan-wrd",
            Command::BnRank { .. } => "bn-rank",
            Command::Sweep { .. } => "sweep",
            Command::CrossCheck { .. } => "cross-check",
            Command::W13Case { .. } => "w13-case",
            Command::Aj { .. } => "aj",
        }
    }
}
