//! `wr`: exact Widom–Rowlinson computations from the command line.
//!
//! Exit status: 0 success, 1 usage or parse error, 2 capacity exceeded,
//! 3 verification mismatch, 4 conjecture counterexample found.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use wr_core::Error;

#[derive(Parser, Debug)]
#[command(name = "wr", version, about = "Exact Widom–Rowlinson partition functions, occupancy bounds and LP certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Builtin graph `name[:params]`, e.g. `cycle:5`, `complete:4`, `petersen`,
    /// `bipartite:3,3`, `prism:4`, `random-regular:n,d,seed`; join with `+` for a
    /// disjoint union
    #[arg(long)]
    builtin: Option<String>,
    /// Edge-list file: header `n m`, then `u v` per edge with `u < v`
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partition polynomial, hom count and optionally P(λ)
    Partition {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Occupancy fraction, or per-colour occupancy with two activities
    Occupancy {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, conflicts_with_all = ["lambda1", "lambda2"])]
        lambda: Option<String>,
        #[arg(long, requires = "lambda2")]
        lambda1: Option<String>,
        #[arg(long, requires = "lambda1")]
        lambda2: Option<String>,
    },
    /// Occupancy, partition and hom bounds against K_{d+1}
    Verify {
        /// Catalog name: d1, d2, d3 or d4
        #[arg(long, conflicts_with_all = ["builtin", "file"])]
        catalog: Option<String>,
        #[arg(long)]
        builtin: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Degree, required with --builtin or --file
        #[arg(long)]
        d: Option<usize>,
        /// Single activity; overrides --grid
        #[arg(long)]
        lambda: Option<String>,
        /// Activities separated by `;`
        #[arg(long, default_value = "1/4;1/2;1;2;10")]
        grid: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Solve the configuration LP exactly
    Lp {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        lambda: String,
    },
    /// Check the dual certificate on every configuration
    Dualcert {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// List configurations up to isomorphism
    Configs {
        #[arg(long)]
        d: usize,
        /// Also print α^v and α^u at this activity
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Estimate the occupancy fraction with Glauber dynamics
    Sample {
        #[command(flatten)]
        source: GraphSource,
        /// Activity as a decimal or `p/q`
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Burn-in steps; defaults to 1000 per vertex
        #[arg(long)]
        burnin: Option<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        thinning: u64,
        /// Independent chains with seeds seed, seed+1, …
        #[arg(long, default_value_t = 1)]
        chains: u64,
        /// Time series of the first chain: step,fraction
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Exact two-activity comparisons over a catalog
    Scan {
        #[arg(long)]
        catalog: String,
        /// Activity pairs `λ1,λ2` separated by `;`
        #[arg(long, default_value = "1,1;2,1;10,1;1,1/2")]
        grid: String,
        /// Findings CSV; printed to stdout when omitted
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Exit status for a run that completed but found something wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Counterexample,
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) | Error::Domain(_) | Error::Parse { .. } => 1,
        Error::Capacity { .. } | Error::RetryExhausted { .. } => 2,
        Error::Inconsistent(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok((out, status)) => {
            print!("{out}");
            ExitCode::from(match status {
                Status::Ok => 0,
                Status::Mismatch => 3,
                Status::Counterexample => 4,
            })
        }
        Err(e) => {
            eprintln!("wr: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
