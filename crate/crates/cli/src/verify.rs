use clap::ValueEnum;
use kneser_core::bounds::{construction_upper_bound, main_lower_bound, stars_max_degree, EvalMode};
use kneser_core::combinat::{union_of_stars_size, ColexCombinations};
use kneser_core::constructions::{explicit_family, union_of_stars, ConstructionSpec};
use kneser_core::exact::{int, rat};
use kneser_core::search::{exact_minimize_with, exhaustive_minimize, greedy_matching, Objective, SearchMode, SearchOptions};
use kneser_core::spectral::{
    check_gammamax, check_thirdorder, eigencomponent_norms, expander_mixing_check, linear_profile, spectrum,
    star_split_check,
};
use kneser_core::{binom, Family, SubsetCode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::output::{print_json, CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Spectral,
    Mixing,
    Bounds,
    Oracle,
    All,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(value_enum, default_value = "all")]
    suite: Suite,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Default)]
struct Checks {
    passed: usize,
    failures: Vec<(String, String)>,
}

impl Checks {
    fn check(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push((name.to_string(), detail()));
        }
    }

    fn result<T>(&mut self, name: &str, r: kneser_core::Result<T>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.failures.push((name.to_string(), e.to_string()));
                None
            }
        }
    }
}

pub fn run(args: Args) -> CliResult {
    let mut checks = Checks::default();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let all = args.suite == Suite::All;
    if all || args.suite == Suite::Spectral {
        spectral(&mut checks, &mut rng);
    }
    if all || args.suite == Suite::Mixing {
        mixing(&mut checks, &mut rng);
    }
    if all || args.suite == Suite::Bounds {
        bounds(&mut checks, &mut rng);
    }
    if all || args.suite == Suite::Oracle {
        oracle(&mut checks);
    }
    let failures: Vec<_> = checks
        .failures
        .iter()
        .map(|(c, d)| json!({ "check": c, "detail": d }))
        .collect();
    print_json(&json!({
        "suite": format!("{:?}", args.suite).to_lowercase(),
        "passed": checks.passed,
        "failed": failures.len(),
        "failures": failures,
    }))?;
    if checks.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("{} checks failed", checks.failures.len())))
    }
}

fn random_family(rng: &mut ChaCha8Rng, n: u32, k: u32) -> Family {
    let total = binom(n as u64, k as u64).try_into().unwrap_or(usize::MAX);
    let size = rng.gen_range(1..=total);
    Family::random(n, k, size, rng).expect("valid parameters")
}

/// `⟨f, A^j f⟩` for `j = 0..=upto` by direct summation over disjoint pairs.
fn direct_moments(family: &Family, upto: u32) -> Vec<BigInt> {
    let sets: Vec<SubsetCode> = ColexCombinations::new(family.n(), family.k()).collect();
    let f: Vec<BigInt> = sets.iter().map(|s| BigInt::from(family.contains(s) as u8)).collect();
    let mut g = f.clone();
    let mut out = Vec::new();
    for j in 0..=upto {
        if j > 0 {
            g = sets
                .iter()
                .map(|x| {
                    sets.iter()
                        .zip(&g)
                        .filter(|(y, _)| x.is_disjoint(y))
                        .map(|(_, v)| v.clone())
                        .sum()
                })
                .collect();
        }
        out.push(f.iter().zip(&g).map(|(a, b)| a * b).sum());
    }
    out
}

fn spectral(c: &mut Checks, rng: &mut ChaCha8Rng) {
    let table = spectrum(5, 2).expect("valid");
    c.check("spectrum K(5,2)", {
        let ev: Vec<i64> = table.eigenvalues.iter().map(|v| v.try_into().unwrap()).collect();
        let mu: Vec<u64> = table.multiplicities.iter().map(|v| v.try_into().unwrap()).collect();
        ev == [3, -2, 1] && mu == [1, 4, 5]
    }, || format!("{table:?}"));
    for n in 3..=30u64 {
        for k in 1..=10u64.min((n - 1) / 2) {
            let t = spectrum(n, k).expect("n >= 2k+1");
            let total: BigInt = t.multiplicities.iter().map(|m| BigInt::from(m.clone())).sum();
            let trace: BigInt = t.eigenvalues.iter().zip(&t.multiplicities).map(|(l, m)| l * BigInt::from(m.clone())).sum();
            let trace2: BigInt = t
                .eigenvalues
                .iter()
                .zip(&t.multiplicities)
                .map(|(l, m)| l * l * BigInt::from(m.clone()))
                .sum();
            let vertices = BigInt::from(binom(n, k));
            let degree = BigInt::from(binom(n - k, k));
            c.check(
                "spectrum traces",
                total == vertices && trace.is_zero() && trace2 == &vertices * &degree,
                || format!("n={n} k={k}"),
            );
        }
    }
    for (n, k) in [(5u32, 2u32), (7, 3)] {
        for _ in 0..200 {
            let f = random_family(rng, n, k);
            let Some(norms) = c.result("eigencomponent norms", eigencomponent_norms(&f)) else { continue };
            let eigen = spectrum(n as u64, k as u64).expect("valid").eigenvalues;
            let direct = direct_moments(&f, k);
            for (j, d) in direct.iter().enumerate() {
                let spectral: BigRational = eigen
                    .iter()
                    .zip(&norms)
                    .map(|(l, x)| BigRational::from_integer(l.pow(j as u32)) * x)
                    .sum();
                c.check("moment identity", spectral == BigRational::from_integer(d.clone()), || {
                    format!("n={n} k={k} j={j} family size {}", f.len())
                });
            }
            c.check("edge moment", direct[1] == BigInt::from(2 * f.edge_count()), || {
                format!("n={n} k={k} size {}", f.len())
            });
        }
    }
    for n in 3..=14u32 {
        for k in 1..=(n - 1) / 2 {
            let star = Family::star(n, k, 1).expect("valid");
            let Some(norms) = c.result("star norms", eigencomponent_norms(&star)) else { continue };
            let eta = &norms[1] / int(star.len());
            c.check(
                "star law",
                eta == BigRational::one() - rat(k as i64, n as i64) && norms[2..].iter().all(Zero::is_zero),
                || format!("n={n} k={k} eta={eta}"),
            );
        }
    }
}

fn mixing(c: &mut Checks, rng: &mut ChaCha8Rng) {
    for _ in 0..200 {
        let x = random_family(rng, 8, 3);
        let y = random_family(rng, 8, 4);
        if let Some(m) = c.result("mixing", expander_mixing_check(&x, &y)) {
            c.check("mixing lemma", m.weak_holds, || format!("deviation {}", m.deviation));
        }
    }
    for _ in 0..200 {
        let f = random_family(rng, 9, 3);
        if let Some(split) = c.result("star split", star_split_check(&f)) {
            c.check("star split", split.holds(), || format!("size {}", f.len()));
        }
    }
    let witness = Family::from_sets(5, 2, &[&[1, 5], &[2, 5], &[3, 5], &[4, 5], &[1, 2]]).expect("valid");
    if let Some(split) = c.result("equality witness", star_split_check(&witness)) {
        let tight = split.rest.value.as_exact() == Some(&int(2)) && split.edges == 2 && split.rest_size == 1;
        c.check("equality witness", split.holds() && tight, || format!("{split:?}"));
    }
}

fn bounds(c: &mut Checks, rng: &mut ChaCha8Rng) {
    for s in 1..=3u64 {
        let n = 10000 * s.pow(5);
        let k = 1;
        for num in [0, 1, 2, 3, 4] {
            let lambda = int(s) + rat(num, 4);
            let lower = main_lower_bound(n, k, s, &lambda, EvalMode::Gated);
            let upper = construction_upper_bound(n, k, s, &lambda, EvalMode::Gated);
            if let (Some(lo), Some(up)) = (c.result("lower bound", lower), c.result("upper bound", upper)) {
                let up = up.value.as_exact().cloned().expect("upper bound is rational");
                c.check("lower <= upper", lo.value.cmp_rational(&up) != Some(std::cmp::Ordering::Greater), || {
                    format!("s={s} lambda={lambda}")
                });
            }
        }
    }
    let spec = ConstructionSpec::new(24, 2, 1, rat(3, 2));
    if let Some((f, t)) = c.result("explicit family", explicit_family(&spec, EvalMode::Gated)) {
        c.check("explicit example", f.len() == 34 && t == 19 && f.max_degree() == 16, || {
            format!("size {} t {t} max degree {}", f.len(), f.max_degree())
        });
    }
    for n in 3..=16u32 {
        for k in 1..=(n - 1) / 2 {
            for s in 1..=4u32.min(n) {
                let Some(f) = c.result("stars", union_of_stars(n, k, &SubsetCode::prefix(s))) else { continue };
                let size_ok = num_bigint::BigUint::from(f.len()) == union_of_stars_size(n as u64, k as u64, s as u64);
                let degree_ok = stars_max_degree(n as u64, k as u64, s as u64)
                    .map(|d| d == f.max_degree().into())
                    .unwrap_or(false);
                c.check("union of stars", size_ok && degree_ok, || format!("n={n} k={k} s={s}"));
            }
        }
    }
    for (n, k) in [(7u32, 2u32), (9, 3), (12, 4)] {
        for _ in 0..100 {
            let f = random_family(rng, n, k);
            let Some(profile) = c.result("linear profile", linear_profile(&f)) else { continue };
            let g = check_gammamax(&profile);
            let t = check_thirdorder(&profile, f.edge_count());
            c.check("gammamax", g.holds(), || format!("n={n} k={k} size {}", f.len()));
            c.check("thirdorder", t.holds(), || format!("n={n} k={k} size {}", f.len()));
        }
    }
}

fn oracle(c: &mut Checks) {
    let bnb = SearchOptions {
        mode: SearchMode::BranchAndBound,
        node_limit: None,
    };
    for (n, k, top) in [(5u32, 2u32, 10u64), (6, 2, 15)] {
        for m in 1..=top {
            for obj in [Objective::MaxDegree, Objective::EdgeCount] {
                let a = c.result("branch and bound", exact_minimize_with(n, k, m, obj, &bnb));
                let b = c.result("exhaustive", exhaustive_minimize(n, k, m, obj));
                if let (Some(a), Some(b)) = (a, b) {
                    c.check("oracle equivalence", a.optimum == b.optimum && a.witness == b.witness, || {
                        format!("n={n} k={k} m={m} {obj}: {} vs {}", a.optimum, b.optimum)
                    });
                }
            }
        }
    }
    let all = Family::complete(5, 2).expect("valid");
    if let Some(g) = c.result("greedy matching", greedy_matching(&all)) {
        c.check("greedy matching", g.is_valid_for(&all) && g.size == 2, || format!("{g:?}"));
    }
}
