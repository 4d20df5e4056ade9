//! `matchlink` command-line tool.
//!
//! Exit codes: 0 yes or success, 3 no, 2 usage or input error, 4 oracle
//! capacity exceeded, 5 the polynomial code and the oracle disagree.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Format;

#[derive(Parser, Debug)]
#[command(name = "matchlink", version, about = "Matching structure of bipartite graphs")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a named or seeded random graph.
    Gen(GenArgs),
    /// Print a perfect matching of a graph.
    Pm {
        graph: String,
    },
    /// Brace decomposition with provenance.
    Braces {
        graph: String,
    },
    /// Decide whether a matching covered graph is K3,3-free.
    K33free {
        graph: String,
    },
    /// Decide 2-MLP with the polynomial algorithm.
    Mlp2 {
        graph: String,
        #[command(flatten)]
        terminals: Terminals,
        /// Also print a solution, found by the oracle.
        #[arg(long)]
        witness: bool,
        /// Print how every cover was decided.
        #[arg(long, short)]
        verbose: bool,
    },
    /// Convert between a graph with a perfect matching and its M-direction.
    Convert {
        input: String,
        /// Matching file for a graph input; defaults to the matching lines
        /// of the input, then to a maximum matching.
        #[arg(long)]
        matching: Option<String>,
    },
    /// Exhaustive reference answers.
    Oracle {
        #[command(subcommand)]
        query: OracleQuery,
    },
    /// Compare the polynomial code with the oracle on one graph.
    Crosscheck {
        graph: String,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    /// c4, k33, cube, heawood, rotunda, t10 or moebius.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    name: Option<String>,
    /// Size parameter: the ladder index, or vertices per class for --random.
    #[arg(long)]
    k: Option<usize>,
    /// A union of random perfect matchings, connected and matching covered.
    #[arg(long, requires_all = ["k", "seed"])]
    random: bool,
    /// Number of random perfect matchings to overlay.
    #[arg(long, default_value_t = 3)]
    layers: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug, Clone, Copy)]
struct Terminals {
    #[arg(long)]
    a1: usize,
    #[arg(long)]
    a2: usize,
    #[arg(long)]
    b1: usize,
    #[arg(long)]
    b2: usize,
}

#[derive(Subcommand, Debug)]
enum OracleQuery {
    /// 2-MLP by trying every perfect matching and path pair.
    Mlp2 {
        graph: String,
        #[command(flatten)]
        terminals: Terminals,
        #[arg(long)]
        witness: bool,
    },
    /// Is there a cross over a conformal cycle?
    Cross {
        graph: String,
        /// Cycle vertices in order, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        cycle: Vec<usize>,
        #[arg(long, value_enum, default_value_t = CrossKindArg::Conformal)]
        kind: CrossKindArg,
    },
    /// Does the graph contain a conformal bisubdivision of K3,3?
    K33 {
        graph: String,
    },
    /// Does every perfect matching use exactly one edge leaving the shore?
    Tightcut {
        graph: String,
        #[arg(long, value_delimiter = ',', required = true)]
        shore: Vec<usize>,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CrossKindArg {
    Matching,
    Strong,
    Conformal,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => commands::gen(&args),
        Command::Pm { graph } => commands::pm(&graph),
        Command::Braces { graph } => commands::braces(&graph),
        Command::K33free { graph } => commands::k33free(&graph),
        Command::Mlp2 {
            graph,
            terminals,
            witness,
            verbose,
        } => commands::mlp2(&graph, terminals, witness, verbose),
        Command::Convert { input, matching } => commands::convert(&input, matching.as_deref()),
        Command::Oracle { query } => commands::oracle(query),
        Command::Crosscheck { graph } => commands::crosscheck(&graph),
    };
    match result {
        Ok(report) => {
            report.print(cli.format);
            ExitCode::from(report.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
