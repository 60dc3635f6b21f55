mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphlim::Budget;

#[derive(Parser, Debug)]
#[command(name = "graphlim", version, about = "Exact counts, cumulants and convergence certificates for bounded-degree graphs")]
struct Cli {
    /// Write the report here instead of stdout (written atomically).
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Cap on log2 of the number of colorings or maps enumerated per component.
    #[arg(long, global = true)]
    max_coloring_bits: Option<f64>,
    /// Cap on the number of edge tuples walked by pattern profiles.
    #[arg(long, global = true)]
    max_tuples: Option<u64>,
    /// Cap on the pattern length l.
    #[arg(long, global = true)]
    max_pattern_len: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit a generated graph as an edge list.
    Gen {
        /// cycle:N, path:N, torus:AxB, complete:N or regular:N:D:SEED.
        #[arg(long)]
        family: String,
    },
    /// hom/inj/ind of a pattern, t into a weighted target, i-profiles.
    Count {
        #[command(flatten)]
        graph: GraphArgs,
        /// Simple pattern graph F (edge-list file) counted into G.
        #[arg(long)]
        pattern: Option<PathBuf>,
        /// Weighted target H as JSON.
        #[arg(long)]
        target: Option<PathBuf>,
        /// Report i(F, G) for every F with at most this many labeled edges.
        #[arg(long)]
        pattern_l: Option<usize>,
    },
    /// Values of f_{G,k}(lambda) and the bridge through log t(G, H_lambda).
    Cgf {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// kappa_G(J) by the direct and the decomposition route.
    Cumulant {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
        /// Color pairs of J, e.g. "0-1,1-1".
        #[arg(long, conflicts_with = "pattern")]
        pairs: Option<String>,
        /// A labeled pattern "n:u-v,..." embedded with distinct colors.
        #[arg(long)]
        pattern: Option<String>,
    },
    /// The catalogs F*_l, F_l and optionally the matrices E, P, K.
    Catalog {
        #[arg(long)]
        l: usize,
        /// Number of colors for the matrices (default 2l when verifying).
        #[arg(long)]
        k: Option<usize>,
        /// Check triangularity, ranks, K = EP and u = Kw; exit 2 on a violation.
        #[arg(long)]
        verify: bool,
        /// Graphs (edge-list files or family specs) for the u = Kw check.
        #[arg(long = "sample")]
        samples: Vec<String>,
    },
    /// Taylor model of f_{G,k} at the origin with evaluations and tail bounds.
    Taylor {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        lambda: LambdaArgs,
    },
    /// Convergence diagnostics along a graph family.
    Diagnose {
        /// cycle, path, torus, complete or regular:D:SEED.
        #[arg(long)]
        family: String,
        /// Sizes: "10..40" (inclusive) or "10,12,20".
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Largest pattern length L.
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, default_value_t = 2)]
        ball_radius: usize,
        #[command(flatten)]
        lambda: LambdaArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run every self-check suite; exit 2 if any check fails.
    Verify {
        #[arg(long, default_value = "smoke")]
        tier: String,
        /// Run with an empty test set.
        #[arg(long, conflicts_with = "test_graph")]
        empty_test_set: bool,
        /// Replace the test set (edge-list files or family specs).
        #[arg(long)]
        test_graph: Vec<String>,
        /// Corrupt the first oracle value of the named check.
        #[arg(long)]
        corrupt: Option<String>,
    },
}

#[derive(Args, Debug)]
struct GraphArgs {
    /// Edge-list file.
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    graph: Option<PathBuf>,
    /// Generated graph, e.g. cycle:6.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args, Debug)]
struct LambdaArgs {
    /// Lambda as JSON {"k", "vertex", "edge"}; repeatable.
    #[arg(long)]
    lambda: Vec<PathBuf>,
    /// Draw random lambdas uniformly from [-cap, cap] with this seed.
    #[arg(long)]
    random_seed: Option<u64>,
    #[arg(long, default_value_t = 0.03)]
    cap: f64,
    #[arg(long, default_value_t = 1)]
    samples: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

/// Why a run stopped: bad input (exit 1) or a violated invariant (exit 2).
enum Failure {
    Input(String),
    Violation(String),
}

impl From<graphlim::Error> for Failure {
    fn from(e: graphlim::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<String, (Failure, Option<String>)>;

fn budget(cli: &Cli) -> graphlim::Result<Budget> {
    let mut b = Budget::from_env()?;
    if let Some(bits) = cli.max_coloring_bits {
        b.coloring_bits = bits;
    }
    if let Some(t) = cli.max_tuples {
        b.max_tuples = t;
    }
    if let Some(l) = cli.max_pattern_len {
        b.max_pattern_len = l;
    }
    if !(b.coloring_bits > 0.0) || b.max_tuples == 0 || b.max_pattern_len == 0 {
        return Err(graphlim::Error::InvalidParameter("budgets must be positive".into()));
    }
    Ok(b)
}

fn run(cli: &Cli) -> Outcome {
    let budget = budget(cli).map_err(|e| (e.into(), None))?;
    commands::dispatch(&cli.command, &budget)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (document, code) = match run(&cli) {
        Ok(doc) => (Some(doc), 0),
        Err((Failure::Input(msg), doc)) => {
            eprintln!("error: {msg}");
            (doc, 1)
        }
        Err((Failure::Violation(msg), doc)) => {
            eprintln!("violation: {msg}");
            (doc, 2)
        }
    };
    if let Some(doc) = document {
        if let Err(e) = input::emit(cli.output.as_deref(), &doc) {
            eprintln!("error: cannot write output: {e}");
            return ExitCode::from(1);
        }
    }
    ExitCode::from(code)
}
