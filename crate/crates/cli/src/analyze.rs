use std::path::PathBuf;

use kneser_core::combinat::size_parameter;
use kneser_core::spectral::{check_gammamax, check_thirdorder, linear_profile};
use kneser_core::DegreeStrategy;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::output::{print_json, read_family, CliError, CliResult};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Family file in the text format; "-" reads stdin.
    file: PathBuf,
}

pub fn run(args: Args) -> CliResult {
    let family = read_family(&args.file)?;
    let (n, k) = (family.n(), family.k());
    let degrees = family.degree_profile(DegreeStrategy::Auto)?;

    let size_param = if k >= 1 {
        size_parameter(n as u64, k as u64, &BigUint::from(family.len()))
            .ok()
            .map(|p| json!({ "s": p.s, "lambda": p.lambda.to_string() }))
    } else {
        None
    };
    let average = if family.is_empty() {
        Value::Null
    } else {
        Value::String(BigRational::new((2 * degrees.edge_count).into(), family.len().into()).to_string())
    };
    let stars: Vec<String> = family
        .star_densities()
        .map(|v| v.iter().map(|x| x.to_string()).collect())
        .unwrap_or_default();

    let mut report = json!({
        "n": n,
        "k": k,
        "size": family.len(),
        "size_parameter": size_param,
        "max_degree": degrees.max_degree,
        "edge_count": degrees.edge_count,
        "average_degree": average,
        "star_densities": stars,
    });

    let mut failed = Vec::new();
    match linear_profile(&family) {
        Ok(profile) => {
            let gammamax = check_gammamax(&profile);
            let third = check_thirdorder(&profile, degrees.edge_count);
            for r in [&gammamax, &third] {
                if r.may_compare() && !r.holds() {
                    failed.push(r.name);
                }
            }
            let mut spectral = profile.to_json();
            spectral["checks"] = json!([gammamax.to_json(), third.to_json()]);
            report["spectral"] = spectral;
        }
        Err(e) => {
            report["spectral"] = Value::Null;
            report["spectral_unavailable"] = Value::String(e.to_string());
        }
    }
    print_json(&report)?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("violated: {}", failed.join(", "))))
    }
}
