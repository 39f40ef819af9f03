use std::path::PathBuf;

use kneser_core::bounds::{
    construction_upper_bound, main_lower_bound, random_expected_degree, stars_max_degree, threshold, BoundReport,
    EvalMode, Relation, Threshold, DISPLAY_DIGITS,
};
use kneser_core::combinat::size_parameter;
use kneser_core::exact::{format_decimal, int, Rounding};
use kneser_core::Result as CoreResult;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::output::{lambda_arg, print_json, read_family, CliError, CliResult};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, required_unless_present = "family")]
    n: Option<u64>,
    #[arg(long, required_unless_present = "family")]
    k: Option<u64>,
    #[arg(long, required_unless_present = "family")]
    s: Option<u64>,
    /// Exact rational "p/q" in [s, s+1].
    #[arg(long, required_unless_present = "family")]
    lambda: Option<String>,
    /// Take n, k, s and lambda from a family file and compare its maximum
    /// degree against the lower bound.
    #[arg(long, conflicts_with_all = ["n", "k", "s", "lambda"])]
    family: Option<PathBuf>,
    /// Lower bound c0 on the popular star density, enabling the extension threshold.
    #[arg(long)]
    c0: Option<String>,
    /// Evaluate every bound even when its hypothesis fails.
    #[arg(long)]
    force: bool,
}

fn report_or_error(r: CoreResult<BoundReport>, name: &str) -> (Value, Option<BoundReport>) {
    match r {
        Ok(r) => (r.to_json(), Some(r)),
        Err(e) => (json!({ "name": name, "error": e.to_string() }), None),
    }
}

pub fn run(args: Args) -> CliResult {
    let mode = if args.force { EvalMode::Forced } else { EvalMode::Gated };
    let (n, k, s, lambda, measured) = match &args.family {
        Some(path) => {
            let f = read_family(path)?;
            let (n, k) = (f.n() as u64, f.k() as u64);
            let p = size_parameter(n, k, &BigUint::from(f.len()))?;
            (n, k, p.s, p.lambda, Some(f.max_degree()))
        }
        None => (
            args.n.expect("clap enforces"),
            args.k.expect("clap enforces"),
            args.s.expect("clap enforces"),
            lambda_arg(args.lambda.as_deref().expect("clap enforces"))?,
            None,
        ),
    };

    let mut lower = main_lower_bound(n, k, s, &lambda, mode)?;
    if let Some(d) = measured {
        lower = lower.compare(int(d), Relation::AtLeast);
    }
    let violated = lower.may_compare() && lower.verdict().is_some() && !lower.holds();
    let (upper, _) = report_or_error(construction_upper_bound(n, k, s, &lambda, mode), "construction_upper_bound");
    let mut thresholds = vec![report_or_error(threshold(&Threshold::Many, n, k, s, &lambda, mode), "many_stars_threshold").0];
    if let Some(c0) = &args.c0 {
        let c0 = lambda_arg(c0).map_err(|e| CliError::Usage(format!("--c0: {e}")))?;
        thresholds.push(
            report_or_error(
                threshold(&Threshold::Extension { c0 }, n, k, s, &lambda, mode),
                "extension_threshold",
            )
            .0,
        );
    }
    let expected = random_expected_degree(n, k, s, &lambda);
    let stars = if s >= 1 {
        stars_max_degree(n, k, s).ok().map(|d| d.to_string())
    } else {
        None
    };
    let report = json!({
        "n": n,
        "k": k,
        "s": s,
        "lambda": lambda.to_string(),
        "p": BigRational::new(k.into(), n.into()).to_string(),
        "measured_max_degree": measured,
        "main_lower_bound": lower.to_json(),
        "construction_upper_bound": upper,
        "random_expected_degree": {
            "exact": expected.to_string(),
            "value": format_decimal(&expected, DISPLAY_DIGITS, Rounding::Down),
            "rounding": Rounding::Down.as_str(),
        },
        "stars_max_degree": stars,
        "thresholds": thresholds,
    });
    print_json(&report)?;
    if violated {
        Err(CliError::Failure("measured maximum degree is below the lower bound".into()))
    } else {
        Ok(())
    }
}
