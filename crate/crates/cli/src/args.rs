use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "clusterlab", version, about = "Mutation, duality, G-fan, folding and exchange-graph checks")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Worker threads for independent check families (default: available cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exchange matrix properties and mutation.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Seeds with principal coefficients.
    #[command(subcommand)]
    Seed(SeedCmd),
    /// Bounded verification walks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Enumerate the G-fan.
    Fan(FanArgs),
    /// Group actions on quivers, orbit mutation and folding.
    #[command(subcommand)]
    Fold(FoldCmd),
    /// Exchange graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
}

#[derive(Debug, Args)]
pub struct MatrixArg {
    /// Matrix JSON file, or inline JSON.
    #[arg(long)]
    pub matrix: String,
}

#[derive(Debug, Args)]
pub struct PathArg {
    /// Comma-separated 1-based mutation directions.
    #[arg(long, value_delimiter = ',', default_value = "")]
    pub path: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum MatrixCmd {
    /// Skew-symmetrizability, sign-skew-symmetry and acyclicity.
    Check(MatrixArg),
    /// Mutate along a path.
    Mutate {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        path: PathArg,
    },
    /// Search reduced mutation sequences for a loss of sign-skew-symmetry.
    VerifyTotal {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum SeedCmd {
    /// Cluster, coefficients and exchange matrix after a path.
    Mutate {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        path: PathArg,
    },
    /// F-polynomials after a path.
    Fpoly {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        path: PathArg,
    },
    /// g-vectors after a path.
    Gvec {
        #[command(flatten)]
        matrix: MatrixArg,
        #[command(flatten)]
        path: PathArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Sign coherence, first duality and determinants; optionally the lockstep assumption and
    /// dual mutation.
    Dualities {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long)]
        assumption: bool,
        /// 1-based direction for the dual-mutation checks.
        #[arg(long)]
        dual_mutation: Option<usize>,
    },
    /// Lockstep walks rooted at every matrix reached and its negative.
    Assumption {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Mutation rule for the y-hat variables.
    Yhat {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}

#[derive(Debug, Args)]
pub struct FanArgs {
    #[command(flatten)]
    pub matrix: MatrixArg,
    #[arg(long, default_value_t = 12)]
    pub depth: usize,
    #[arg(long, default_value_t = 10_000)]
    pub max_cones: usize,
    /// Write cone generators here.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Run the fan checks and point sampling.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct QuiverArg {
    /// Quiver JSON file, or inline JSON.
    #[arg(long)]
    pub quiver: String,
}

#[derive(Debug, Subcommand)]
pub enum FoldCmd {
    /// Admissibility of the group action.
    Check(QuiverArg),
    /// Mutate at the orbit of a vertex.
    Mutate {
        #[command(flatten)]
        quiver: QuiverArg,
        /// 1-based vertex.
        #[arg(long)]
        vertex: usize,
    },
    /// Folded matrix and orbits.
    FoldMatrix(QuiverArg),
    /// Quiver with one frozen copy per mutable vertex.
    Frame(QuiverArg),
    /// Global foldability and framed walks.
    Verify {
        #[command(flatten)]
        quiver: QuiverArg,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum GraphCheck {
    Cluster,
    Adjacency,
    Cmatrix,
    Oddrank,
}

#[derive(Debug, Subcommand)]
pub enum GraphCmd {
    /// Breadth-first exploration up to the node and depth limits.
    Explore {
        #[command(flatten)]
        matrix: MatrixArg,
        #[arg(long, default_value_t = clusterlab_core::graph::DEFAULT_MAX_NODES)]
        max_nodes: usize,
        #[arg(long, default_value_t = clusterlab_core::graph::DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Write the graph JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz output for a stored graph.
    ExportDot {
        /// Graph JSON file, or inline JSON.
        graph: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Structural checks on a stored graph.
    Verify {
        /// Graph JSON file, or inline JSON.
        graph: String,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [GraphCheck::Cluster, GraphCheck::Adjacency, GraphCheck::Cmatrix, GraphCheck::Oddrank])]
        checks: Vec<GraphCheck>,
    },
}
