use std::fmt::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use kneser_core::bounds::EvalMode;
use kneser_core::combinat::size_parameter;
use kneser_core::constructions::{explicit_family, order_segment, random_family, union_of_stars, ConstructionSpec};
use kneser_core::{Order, SubsetCode};
use num_bigint::BigUint;

use crate::output::{lambda_arg, write_text, CliError, CliResult};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    /// Union of the stars centred at --centres, or at 1..=s.
    Stars,
    /// Threshold family at size parameter --lambda.
    Explicit,
    /// Random family at size parameter --lambda, seeded by --seed.
    Random,
    /// First --m sets in lex order.
    Lex,
    /// First --m sets in colex order.
    Colex,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    s: Option<u32>,
    /// Exact rational "p/q" or integer.
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    /// Comma-separated star centres, e.g. "1,4".
    #[arg(long)]
    centres: Option<String>,
    /// Build the threshold family even when n < 12ks.
    #[arg(long)]
    force: bool,
    /// Family file to write; stdout when absent or "-".
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn need<T: Clone>(value: &Option<T>, flag: &str, kind: Kind) -> CliResult<T> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("{kind:?} construction needs --{flag}").to_lowercase()))
}

fn spec(args: &Args) -> CliResult<ConstructionSpec> {
    let s = need(&args.s, "s", args.kind)?;
    let lambda = lambda_arg(&need(&args.lambda, "lambda", args.kind)?)?;
    let mut spec = ConstructionSpec::new(args.n, args.k, s, lambda);
    if let Some(seed) = args.seed {
        spec = spec.with_seed(seed);
    }
    Ok(spec)
}

pub fn run(args: Args) -> CliResult {
    let mut threshold = None;
    let family = match args.kind {
        Kind::Stars => {
            let centres = match (&args.centres, args.s) {
                (Some(list), _) => {
                    let elems = list
                        .split(',')
                        .map(|t| t.trim().parse::<u32>())
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| CliError::Usage(format!("--centres: {e}")))?;
                    SubsetCode::from_elements(args.n, &elems)?
                }
                (None, Some(s)) => {
                    if s > args.n {
                        return Err(CliError::Usage(format!("s = {s} exceeds n = {}", args.n)));
                    }
                    SubsetCode::prefix(s)
                }
                (None, None) => return Err(CliError::Usage("stars construction needs --s or --centres".into())),
            };
            union_of_stars(args.n, args.k, &centres)?
        }
        Kind::Explicit => {
            let mode = if args.force { EvalMode::Forced } else { EvalMode::Gated };
            let (f, t) = explicit_family(&spec(&args)?, mode)?;
            threshold = Some(t);
            f
        }
        Kind::Random => {
            need(&args.seed, "seed", args.kind)?;
            random_family(&spec(&args)?)?
        }
        Kind::Lex | Kind::Colex => {
            let m = need(&args.m, "m", args.kind)?;
            let order = if matches!(args.kind, Kind::Lex) { Order::Lex } else { Order::Colex };
            order_segment(order, args.n, args.k, m)?
        }
    };

    let mut summary = String::new();
    writeln!(summary, "size {}", family.len()).unwrap();
    if family.k() >= 1 {
        if let Ok(p) = size_parameter(family.n() as u64, family.k() as u64, &BigUint::from(family.len())) {
            writeln!(summary, "s {}", p.s).unwrap();
            writeln!(summary, "lambda {}", p.lambda).unwrap();
        }
    }
    writeln!(summary, "max_degree {}", family.max_degree()).unwrap();
    if let Some(t) = threshold {
        writeln!(summary, "t {t}").unwrap();
    }

    let to_file = args.output.as_ref().is_some_and(|p| p.as_os_str() != "-");
    write_text(args.output.as_deref(), &family.to_text())?;
    if to_file {
        write_text(None, &summary)
    } else {
        eprint!("{summary}");
        Ok(())
    }
}
