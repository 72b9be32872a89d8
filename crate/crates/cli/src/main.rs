use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use pdslab::io::WordOrder;
use pdslab::Params;

mod commands;

/// Partial difference sets and strongly regular Cayley graphs.
#[derive(Parser, Debug)]
#[command(name = "pdslab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct GroupSet {
    /// Group table (`group-table v`) or pc presentation (`pc n`).
    #[arg(long)]
    group: PathBuf,
    /// Subset as words over the generator labels.
    #[arg(long)]
    set: PathBuf,
    /// Product convention for words.
    #[arg(long, default_value = "ltr")]
    word_order: WordOrder,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Theta {
    First,
    Second,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GraphFormat {
    Edges,
    Graph6,
}

#[derive(Subcommand, Debug)]
enum Construction {
    /// The triangular graph `T_q` for a prime power `q ≡ 3 (mod 4)`.
    Triangular {
        #[arg(long)]
        q: u64,
    },
    /// The Hermitian quadrangle construction of order `q³`.
    Godsil {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u64,
    },
    /// The two `(27,10,1,5)` sets.
    Order27 {
        #[arg(long, value_parser = ["heisenberg", "c9", "c9_semidirect"])]
        variant: String,
    },
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every parameter test on `v,k,l,m`.
    Feasibility {
        #[arg(long)]
        params: Params,
        /// Also write a certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Build a PDS and write the group, subset and certificate files.
    Construct {
        #[command(subcommand)]
        which: Construction,
        #[arg(long, default_value = ".", global = true)]
        out: PathBuf,
    },
    /// Certify a subset as a PDS in the group ring.
    Verify {
        #[command(flatten)]
        input: GroupSet,
        #[arg(long)]
        params: Params,
        /// Also count common neighbours on the Cayley graph.
        #[arg(long)]
        graph: bool,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Class-by-class table of `|Cl(x) ∩ S|·|C(x)|`.
    Phi {
        #[command(flatten)]
        input: GroupSet,
        #[arg(long)]
        params: Params,
        #[arg(long)]
        cert: Option<PathBuf>,
    },
    /// Test `S^(m) = S`, or its image in the abelianization.
    Multiplier {
        #[command(flatten)]
        input: GroupSet,
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        quotient: bool,
        /// Required by `--quotient`; read off `S²` when omitted.
        #[arg(long)]
        params: Option<Params>,
    },
    /// The dual subset of an abelian PDS.
    Dual {
        #[command(flatten)]
        input: GroupSet,
        #[arg(long)]
        params: Params,
        #[arg(long, value_enum, default_value = "first")]
        theta: Theta,
    },
    /// Enumerate feasible quadruples with `v ≤ N`.
    Scan {
        #[arg(long)]
        v_max: i64,
        /// Also list rejected quadruples with their first failing filter.
        #[arg(long)]
        rejected: bool,
    },
    /// Print a graph as an edge list or graph6.
    Export {
        /// Graph file in either format.
        #[arg(long, conflicts_with_all = ["group", "set"])]
        graph: Option<PathBuf>,
        #[arg(long, requires = "set")]
        group: Option<PathBuf>,
        #[arg(long, requires = "group")]
        set: Option<PathBuf>,
        #[arg(long, default_value = "ltr")]
        word_order: WordOrder,
        #[arg(long, value_enum, default_value = "edges")]
        format: GraphFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
