use std::fmt::Write;
use std::path::PathBuf;

use kneser_core::bounds::{construction_upper_bound, main_lower_bound, stars_max_degree, EvalMode, DISPLAY_DIGITS};
use kneser_core::combinat::{binom_u64, size_parameter, union_of_stars_size, unrank};
use kneser_core::exact::{format_decimal, Rounding};
use kneser_core::search::{exact_minimize_with, Objective, SearchOptions};
use kneser_core::{Error, Order};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::output::{write_text, CliError, CliResult};

const HEADER: &str = "m,lambda,s,lower_bound,hypothesis_ok,upper_bound,stars_point,lex_avg_degree,exact_min";

/// One row per family size m, from 1 up to C(n,k), or up to the size of a
/// union of s_max+1 stars when --s-max is given.
///
/// Decimals carry 12 significant digits. lambda, lower_bound and
/// lex_avg_degree are rounded down, upper_bound is rounded up. The lower
/// bound is evaluated even where its hypothesis fails; hypothesis_ok says
/// which rows carry a guarantee. stars_point is the exact maximum degree of
/// a union of lambda stars at integral lambda. exact_min is left empty
/// when no exact search fits the budget.
#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    s_max: Option<u64>,
    /// Emit about this many evenly spaced sizes instead of every size.
    #[arg(long)]
    steps: Option<u64>,
    /// Branch-and-bound node budget per row for exact_min.
    #[arg(long, default_value_t = 2_000_000)]
    node_limit: u64,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn sizes(top: u64, steps: Option<u64>) -> Vec<u64> {
    match steps {
        Some(steps) if steps > 0 && steps < top => {
            let mut out: Vec<u64> = (1..=steps).map(|i| ((i * top + steps / 2) / steps).max(1)).collect();
            out.dedup();
            out
        }
        _ => (1..=top).collect(),
    }
}

fn exact_min(n: u32, k: u32, m: u64, node_limit: u64) -> CliResult<Option<u64>> {
    let options = SearchOptions {
        node_limit: Some(node_limit),
        ..SearchOptions::default()
    };
    match exact_minimize_with(n, k, m, Objective::MaxDegree, &options) {
        Ok(r) if r.proven_optimal => Ok(Some(r.optimum)),
        Ok(_) | Err(Error::TooLarge(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

pub fn run(args: Args) -> CliResult {
    let (n, k) = (args.n, args.k);
    if k == 0 || n < 2 * k + 1 {
        return Err(CliError::Usage(format!("figure1 needs k >= 1 and n >= 2k+1, got n={n}, k={k}")));
    }
    let total = binom_u64(n as u64, k as u64)
        .filter(|&t| t <= 1 << 24)
        .ok_or_else(|| CliError::Usage(format!("C({n}, {k}) is too large to tabulate")))?;
    let top = match args.s_max {
        Some(s) => union_of_stars_size(n as u64, k as u64, (s + 1).min(n as u64))
            .to_u64()
            .unwrap_or(total)
            .min(total),
        None => total,
    };
    let rows = sizes(top, args.steps);

    // edge counts of lex segments, accumulated one set at a time
    let last = rows.last().copied().unwrap_or(0);
    let mut lex = Vec::with_capacity(last as usize);
    let mut lex_edges = vec![0u64; last as usize + 1];
    for r in 0..last {
        let a = unrank(Order::Lex, n, k, r)?;
        let new_edges = lex.iter().filter(|b: &&kneser_core::SubsetCode| b.is_disjoint(&a)).count() as u64;
        lex_edges[r as usize + 1] = lex_edges[r as usize] + new_edges;
        lex.push(a);
    }

    let mut csv = String::new();
    writeln!(csv, "{HEADER}").unwrap();
    for m in rows {
        let p = size_parameter(n as u64, k as u64, &BigUint::from(m))?;
        let lower = main_lower_bound(n as u64, k as u64, p.s, &p.lambda, EvalMode::Forced)?;
        let upper = construction_upper_bound(n as u64, k as u64, p.s, &p.lambda, EvalMode::Forced)?;
        let stars_point = if p.lambda.is_integer() && p.lambda >= BigRational::from_integer(1.into()) {
            let s = p.lambda.to_integer().to_u64().expect("small");
            stars_max_degree(n as u64, k as u64, s)?.to_string()
        } else {
            String::new()
        };
        let avg = BigRational::new((2 * lex_edges[m as usize]).into(), m.into());
        let exact = exact_min(n, k, m, args.node_limit)?.map(|v| v.to_string()).unwrap_or_default();
        writeln!(
            csv,
            "{m},{},{},{},{},{},{stars_point},{},{exact}",
            format_decimal(&p.lambda, DISPLAY_DIGITS, Rounding::Down),
            p.s,
            lower.decimal().unwrap_or_default(),
            lower.hypothesis_ok(),
            upper.decimal().unwrap_or_default(),
            format_decimal(&avg, DISPLAY_DIGITS, Rounding::Down),
        )
        .unwrap();
    }
    write_text(args.output.as_deref(), &csv)
}
