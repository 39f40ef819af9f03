use std::path::PathBuf;

use clap::ValueEnum;
use kneser_core::combinat::size_parameter;
use kneser_core::search::{
    conjecture_reports, exact_minimize_with, greedy_matching, local_search, maximum_matching, Objective, SearchMode,
    SearchOptions, BRUTE_FORCE_MAX_MEMBERS,
};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::output::{print_json, read_family, write_text, CliResult};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ObjectiveArg {
    MaxDegree,
    EdgeCount,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::MaxDegree => Objective::MaxDegree,
            ObjectiveArg::EdgeCount => Objective::EdgeCount,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    /// Branch and bound when C(n,k) <= 36, otherwise exhaustive.
    Auto,
    /// Branch and bound with orbit pruning.
    Bnb,
    /// Every m-subset.
    Exhaustive,
    /// Seeded swap descent; never proves optimality.
    Local,
}

#[derive(clap::Args, Debug)]
pub struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    m: u64,
    #[arg(long, value_enum, default_value = "max-degree")]
    objective: ObjectiveArg,
    #[arg(long, value_enum, default_value = "auto")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Swap attempts for --mode local.
    #[arg(long, default_value_t = 10_000)]
    iterations: u64,
    /// Abandon branch and bound after this many nodes.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Also write the witness family in the text format.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Enumerate every minimiser of the maximum degree and report on the
    /// conjectured minimiser shapes.
    #[arg(long)]
    conjectures: bool,
}

pub fn run_search(args: SearchArgs) -> CliResult {
    let objective = Objective::from(args.objective);
    let result = match args.mode {
        ModeArg::Local => local_search(args.n, args.k, args.m, objective, args.seed, args.iterations)?,
        mode => {
            let mode = match mode {
                ModeArg::Bnb => SearchMode::BranchAndBound,
                ModeArg::Exhaustive => SearchMode::Exhaustive,
                _ => SearchMode::Auto,
            };
            let options = SearchOptions {
                mode,
                node_limit: args.node_limit,
            };
            exact_minimize_with(args.n, args.k, args.m, objective, &options)?
        }
    };
    if let Some(path) = &args.witness {
        write_text(Some(path), &result.witness.to_text())?;
    }
    let mut report = json!({ "search": result.to_json() });
    if args.conjectures {
        report["conjectures"] = conjecture_reports(args.n, args.k, args.m)?.to_json();
    }
    print_json(&report)
}

#[derive(clap::Args, Debug)]
pub struct MatchingArgs {
    /// Family file in the text format; "-" reads stdin.
    file: PathBuf,
}

pub fn run_matching(args: MatchingArgs) -> CliResult {
    let family = read_family(&args.file)?;
    let greedy = greedy_matching(&family)?;
    let maximum = if family.len() <= BRUTE_FORCE_MAX_MEMBERS {
        Some(maximum_matching(&family)?)
    } else {
        None
    };
    let (n, k) = (family.n() as u64, family.k() as u64);
    let hypothesis = size_parameter(n, k, &BigUint::from(family.len())).ok().map(|p| {
        let s = BigUint::from(p.s);
        json!({
            "s": p.s,
            "text": "n >= 10000*s^5*k",
            "ok": BigUint::from(n) >= BigUint::from(10000u32) * s.pow(5) * k,
        })
    });
    let report = json!({
        "n": n,
        "k": k,
        "size": family.len(),
        "greedy": greedy.to_json(),
        "maximum": maximum.as_ref().map(|m| m.to_json()).unwrap_or(Value::Null),
        "gap": maximum.as_ref().map(|m| m.size - greedy.size),
        "hypothesis": hypothesis,
    });
    print_json(&report)
}
