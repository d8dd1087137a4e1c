//! `polar`: build, check and certify polarizations from the command line.
//!
//! Every command prints one JSON report on stdout. Progress goes to stderr.
//! Exit status is 0 when the report says `ok`, 2 when two independent checks
//! disagree, and 1 otherwise (bad input or a negative verdict).

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use report::Outcome;

#[derive(Parser, Debug)]
#[command(name = "polar", version, about = "Polarizations of powers of the maximal ideal")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Alexander dual of a square-free ideal.
    Dual {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        emit: Emit,
    },
    /// Decide whether an ideal or a partition family is a polarization.
    #[command(subcommand)]
    Check(CheckCmd),
    /// Dual of a partition family.
    #[command(subcommand)]
    Dualize(DualizeCmd),
    /// List all partition families satisfying the criterion.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Polarization of `I_{n-1}` (or of `I_2` with `--dual`) from a spanning tree.
    Tree {
        #[arg(long)]
        n: u32,
        /// Edges as `1-2,2-3,...`; labels follow list order.
        #[arg(long)]
        edges: String,
        #[arg(long)]
        dual: bool,
        #[command(flatten)]
        emit: Emit,
    },
    /// Vertex splits of graphs with square-free edge ideals.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Polarization of `(x, y, z)^d` from a choice of down triangles.
    Triangle {
        #[arg(long)]
        d: u32,
        /// One of x, y, z per down triangle, graded-lex order on M_{d-2}.
        #[arg(long)]
        choices: String,
        #[arg(long)]
        emit_svg: Option<PathBuf>,
        /// Writes the labeled cell complex as JSON.
        #[arg(long)]
        emit_complex: Option<PathBuf>,
        /// Also certify the cellular resolution and compare with the Hilbert oracle.
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        emit: Emit,
    },
    /// Multigraded Betti numbers.
    Betti {
        #[arg(long)]
        input: PathBuf,
    },
    /// Numerator of the Hilbert series.
    Hilbert {
        #[arg(long)]
        input: PathBuf,
        /// Cross-check against inclusion-exclusion over generator subsets.
        #[arg(long)]
        verify: bool,
    },
    /// Check that a labeled cell complex supports a minimal free resolution.
    Certify {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        ideal: PathBuf,
    },
    /// Exhaustive or sampled sweeps.
    #[command(subcommand)]
    Sweep(SweepCmd),
}

#[derive(Args, Debug, Clone, Default)]
struct Emit {
    /// Writes the constructed object as JSON.
    #[arg(long)]
    emit: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum CheckCmd {
    Polarization {
        #[arg(long)]
        candidate: PathBuf,
        #[arg(long)]
        target: PathBuf,
    },
    Partition {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum DualizeCmd {
    Partition {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Subcommand, Debug)]
enum EnumerateCmd {
    Partitions {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        maximal_only: bool,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Args, Debug)]
struct GraphSource {
    /// Graph JSON.
    #[arg(long, conflicts_with = "complete")]
    input: Option<PathBuf>,
    /// Use the complete graph on this many vertices.
    #[arg(long)]
    complete: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Every bipartition of the link of a vertex, with verdicts.
    Splits {
        #[command(flatten)]
        source: GraphSource,
        /// Vertex as `i` or `i_c`.
        #[arg(long)]
        at: String,
    },
    /// Split one vertex.
    Split {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        at: String,
        /// Sides as `A|B`, e.g. `2|3,4`.
        #[arg(long)]
        parts: String,
        #[command(flatten)]
        emit: Emit,
    },
}

#[derive(Subcommand, Debug)]
enum SweepCmd {
    /// Criterion, Hilbert oracle and duality over all (or sampled) families.
    Duality(PartitionSweepArgs),
    /// Criterion, Hilbert oracle and Betti numbers over all (or sampled) families.
    Criterion(PartitionSweepArgs),
    /// Every down-triangle choice for one `d`.
    Triangles {
        #[arg(long)]
        d: u32,
        #[arg(long, default_value_t = 5)]
        max_witnesses: usize,
    },
    /// Every labeled spanning tree of `K_n`.
    Trees {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 5)]
        max_witnesses: usize,
    },
    /// Maximal `d = 2` families against duals of tree polarizations.
    Surjectivity {
        #[arg(long)]
        n: u32,
    },
    /// Hilbert numerators on random square-free ideals against inclusion-exclusion.
    Hilbert {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        max_vars: u32,
        #[arg(long, default_value_t = 8)]
        max_gens: usize,
    },
}

#[derive(Args, Debug)]
struct PartitionSweepArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    d: u32,
    /// Sample this many families uniformly instead of enumerating.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    max_witnesses: usize,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    let started = Instant::now();
    match commands::run(cli.command) {
        Ok(report) => {
            println!("{}", report.render(started.elapsed()));
            match report.outcome() {
                Outcome::Ok => ExitCode::SUCCESS,
                Outcome::Rejected => ExitCode::from(1),
                Outcome::Disagreement => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
