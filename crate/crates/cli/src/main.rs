//! `kneser`: build, measure and search families of `k`-subsets whose
//! induced Kneser subgraph has small maximum degree.

mod analyze;
mod bounds;
mod construct;
mod figure1;
mod output;
mod search;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::CliError;

#[derive(Parser, Debug)]
#[command(name = "kneser", version, about = "Induced subgraphs of Kneser graphs in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a family and write it in the text format.
    Construct(construct::Args),
    /// Degree, spectral and inequality report for a family file, as JSON.
    Analyze(analyze::Args),
    /// Evaluate the degree bounds at (n, k, s, lambda), as JSON.
    Bounds(bounds::Args),
    /// Exact or heuristic minimisation of the maximum degree or edge count.
    Search(search::SearchArgs),
    /// Greedy matching of a family file, with a brute-force comparison when small.
    Matching(search::MatchingArgs),
    /// CSV data for the minimum maximum degree against family size.
    Figure1(figure1::Args),
    /// Run a self-check suite; exit status 1 on any failure.
    Verify(verify::Args),
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("KNESER_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("KNESER_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Failure(format!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Construct(args) => construct::run(args),
        Command::Analyze(args) => analyze::run(args),
        Command::Bounds(args) => bounds::run(args),
        Command::Search(args) => search::run_search(args),
        Command::Matching(args) => search::run_matching(args),
        Command::Figure1(args) => figure1::run(args),
        Command::Verify(args) => verify::run(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
