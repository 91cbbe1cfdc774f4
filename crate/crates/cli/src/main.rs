//! `simplexreg` command-line front end.
//!
//! Exit codes: 0 when the decision is true or the computation succeeded,
//! 1 when the decision is false, 2 on usage or input errors.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(name = "simplexreg", version, about = "Graph matching as point-set registration on a simplex embedding")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Residual threshold for geometric decisions.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Restarts for heuristic registration.
    #[arg(long, global = true, default_value_t = 32)]
    pub restarts: usize,
    /// Iteration cap per restart.
    #[arg(long, global = true, default_value_t = 200)]
    pub iters: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Distance computation for `ggd`.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Heuristic,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the point cloud of a graph, digraph or hypergraph file.
    Embed { graph: PathBuf },
    /// Decide whether two graphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Count automorphisms.
    Auto { graph: PathBuf },
    /// Decide whether PATTERN is isomorphic to a subgraph of HOST.
    Subiso { host: PathBuf, pattern: PathBuf },
    /// Graph geometric distance between two same-size graphs.
    Ggd { first: PathBuf, second: PathBuf },
    /// Largest distance to any graph of the same size.
    Telo { graph: PathBuf },
    /// Compare geometric and combinatorial isomorphism decisions on many pairs.
    Selfcheck {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = commands::run(&cli);
    let elapsed = start.elapsed();
    match outcome {
        Ok(done) => {
            print!("{}", done.report.render(cli.opts.format));
            eprintln!("time: {:.3} ms", elapsed.as_secs_f64() * 1e3);
            ExitCode::from(if done.success { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
