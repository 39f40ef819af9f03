//! Finite checks of the conjectured shape of maximum-degree minimisers.
//!
//! Both conjectures are asymptotic, so a tiny instance can only agree with
//! them or exhibit a small-`n` exception; every report says so.

use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::exact::enumerate_optimal;
use super::Objective;
use crate::combinat::{binom, size_parameter, union_of_stars_size, ColexCombinations, Order, SubsetCode};
use crate::constructions::order_segment;
use crate::error::Result;
use crate::family::Family;

pub const ASYMPTOTIC_CAVEAT: &str =
    "the conjectures assume n is sufficiently large compared to k and s; a desk-scale instance cannot confirm or refute them";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    CounterexampleFound,
    OutsideHypotheses,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::CounterexampleFound => "counterexample found",
            Verdict::OutsideHypotheses => "instance outside conjecture hypotheses",
        }
    }
}

/// Sparse minimiser shape: some minimiser lies in `s+1` stars, contains
/// every set meeting their centres twice, and has near-equal singleton slices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseReport {
    pub in_hypotheses: bool,
    pub contained_in_stars: bool,
    pub contains_intersections: bool,
    pub slices_balanced: bool,
    pub all_three: bool,
    /// A minimiser and centres satisfying all three properties.
    pub witness: Option<(Family, SubsetCode)>,
    pub verdict: Verdict,
}

/// Dense minimiser shape: for `m >= C(n,k)/2` some minimiser fits in `C([t],k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseReport {
    pub in_hypotheses: bool,
    pub t: u32,
    pub fits_in_t: bool,
    pub colex_segment_value: u64,
    /// Set when `m = C(t,k)`: whether `C([t],k)` itself is optimal.
    pub full_segment_optimal: Option<bool>,
    pub verdict: Verdict,
}

/// Present when `m` is the size of a union of `s >= 1` stars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarUnionReport {
    pub s: u64,
    pub every_minimizer_is_union: bool,
    pub some_minimizer_is_union: bool,
    /// Whether `n >= 10000·s^5·k`, the hypothesis under which every minimiser is a union of stars.
    pub equality_hypothesis_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: u32,
    pub k: u32,
    pub m: u64,
    pub optimum: u64,
    /// Optimal families up to relabelling, as canonical representatives.
    pub minimizers: Vec<Family>,
    pub s: u64,
    pub lambda: BigRational,
    pub sparse: SparseReport,
    pub dense: DenseReport,
    pub stars: Option<StarUnionReport>,
    pub caveat: &'static str,
}

/// Enumerates all minimisers of the maximum degree at size `m` and checks
/// the sparse and dense shape conjectures against them.
pub fn conjecture_reports(n: u32, k: u32, m: u64) -> Result<ConjectureReport> {
    let (best, minimizers) = enumerate_optimal(n, k, m, Objective::MaxDegree)?;
    let p = size_parameter(n as u64, k as u64, &BigUint::from(m))?;
    let integral = p.lambda.is_integer() && p.s >= 1;
    let sparse = sparse_report(n, k, p.s, integral, &minimizers);
    let dense = dense_report(n, k, m, best.optimum, &minimizers)?;
    let stars = if p.s >= 1 && union_of_stars_size(n as u64, k as u64, p.s) == BigUint::from(m) {
        let unions: Vec<bool> = minimizers.iter().map(|f| is_union_of_stars(f, p.s as u32)).collect();
        let s = BigUint::from(p.s);
        Some(StarUnionReport {
            s: p.s,
            every_minimizer_is_union: unions.iter().all(|&u| u),
            some_minimizer_is_union: unions.iter().any(|&u| u),
            equality_hypothesis_ok: BigUint::from(n) >= BigUint::from(10000u32) * s.pow(5) * k,
        })
    } else {
        None
    };
    Ok(ConjectureReport {
        n,
        k,
        m,
        optimum: best.optimum,
        minimizers,
        s: p.s,
        lambda: p.lambda,
        sparse,
        dense,
        stars,
        caveat: ASYMPTOTIC_CAVEAT,
    })
}

fn subsets(n: u32, size: u32) -> impl Iterator<Item = SubsetCode> {
    ColexCombinations::new(n, size)
}

fn is_union_of_stars(f: &Family, s: u32) -> bool {
    subsets(f.n(), s).any(|centres| f.iter().all(|a| !a.is_disjoint(&centres)))
}

/// The three sparse-shape properties of `f` with respect to `centres`.
fn sparse_properties(f: &Family, centres: &SubsetCode) -> [bool; 3] {
    let (n, k) = (f.n() as u64, f.k() as u64);
    let head = centres.len() as u64;
    let contained = f.iter().all(|a| !a.is_disjoint(centres));
    let twice: u64 = f.iter().filter(|a| a.intersection(centres).len() >= 2).count() as u64;
    let all_twice: BigUint = (2..=head.min(k)).map(|j| binom(head, j) * binom(n - head, k - j)).sum();
    let intersections = BigUint::from(twice) == all_twice;
    let slices: Vec<Vec<SubsetCode>> = centres
        .iter()
        .map(|i| {
            let mut single = SubsetCode::EMPTY;
            single.insert(i);
            f.iter()
                .filter(|a| a.intersection(centres) == single)
                .map(|a| a.difference(&single))
                .collect()
        })
        .collect();
    let balanced = slices.iter().enumerate().all(|(x, a)| {
        slices[x + 1..].iter().all(|b| {
            let common = a.iter().filter(|c| b.binary_search(c).is_ok()).count();
            a.len() + b.len() - 2 * common <= 1
        })
    });
    [contained, intersections, balanced]
}

/// With `λ = s` integral the size is also `λ = (s-1) + 1`, so `s` centres
/// are tried alongside `s + 1`.
fn sparse_report(n: u32, k: u32, s: u64, integral: bool, minimizers: &[Family]) -> SparseReport {
    let in_hypotheses = k >= 1 && s < n as u64 && 2 * k <= n;
    let mut any = [false; 3];
    let mut witness = None;
    let heads: Vec<u32> = if integral { vec![s as u32, s as u32 + 1] } else { vec![s as u32 + 1] };
    if s < n as u64 {
        for f in minimizers {
            for centres in heads.iter().flat_map(|&h| subsets(n, h)) {
                let props = sparse_properties(f, &centres);
                for (seen, p) in any.iter_mut().zip(props) {
                    *seen |= p;
                }
                if witness.is_none() && props.iter().all(|&p| p) {
                    witness = Some((f.clone(), centres));
                }
            }
        }
    }
    let all_three = witness.is_some();
    let verdict = if !in_hypotheses {
        Verdict::OutsideHypotheses
    } else if all_three {
        Verdict::Consistent
    } else {
        Verdict::CounterexampleFound
    };
    SparseReport {
        in_hypotheses,
        contained_in_stars: any[0],
        contains_intersections: any[1],
        slices_balanced: any[2],
        all_three,
        witness,
        verdict,
    }
}

fn dense_report(n: u32, k: u32, m: u64, optimum: u64, minimizers: &[Family]) -> Result<DenseReport> {
    let total = binom(n as u64, k as u64);
    let in_hypotheses = BigUint::from(2 * m) >= total;
    let t = (k..=n)
        .find(|&t| binom(t as u64, k as u64) >= BigUint::from(m))
        .unwrap_or(n);
    let fits_in_t = minimizers.iter().any(|f| f.support().len() <= t);
    let segment = order_segment(Order::Colex, n, k, m)?;
    let colex_segment_value = segment.max_degree();
    let full_segment_optimal = (binom(t as u64, k as u64) == BigUint::from(m)).then_some(colex_segment_value == optimum);
    let verdict = if !in_hypotheses {
        Verdict::OutsideHypotheses
    } else if fits_in_t {
        Verdict::Consistent
    } else {
        Verdict::CounterexampleFound
    };
    Ok(DenseReport {
        in_hypotheses,
        t,
        fits_in_t,
        colex_segment_value,
        full_segment_optimal,
        verdict,
    })
}

impl ConjectureReport {
    pub fn to_json(&self) -> Value {
        let sets = |f: &Family| f.iter().map(|a| a.elements()).collect::<Vec<_>>();
        json!({
            "n": self.n,
            "k": self.k,
            "m": self.m,
            "objective": Objective::MaxDegree.as_str(),
            "optimum": self.optimum,
            "minimizer_classes": self.minimizers.len(),
            "s": self.s,
            "lambda": self.lambda.to_string(),
            "caveat": self.caveat,
            "sparse_minimizer": {
                "in_hypotheses": self.sparse.in_hypotheses,
                "contained_in_s_plus_1_stars": self.sparse.contained_in_stars,
                "contains_pairwise_intersections": self.sparse.contains_intersections,
                "slices_within_one": self.sparse.slices_balanced,
                "all_three": self.sparse.all_three,
                "witness": self.sparse.witness.as_ref().map(|(f, c)| json!({
                    "centres": c.elements(),
                    "family": sets(f),
                })),
                "verdict": self.sparse.verdict.as_str(),
            },
            "dense_minimizer": {
                "in_hypotheses": self.dense.in_hypotheses,
                "t": self.dense.t,
                "fits_in_t": self.dense.fits_in_t,
                "colex_segment_max_degree": self.dense.colex_segment_value,
                "full_segment_optimal": self.dense.full_segment_optimal,
                "verdict": self.dense.verdict.as_str(),
            },
            "union_of_stars": self.stars.as_ref().map(|r| json!({
                "s": r.s,
                "every_minimizer_is_union": r.every_minimizer_is_union,
                "some_minimizer_is_union": r.some_minimizer_is_union,
                "equality_hypothesis": "n >= 10000*s^5*k",
                "equality_hypothesis_ok": r.equality_hypothesis_ok,
            })),
        })
    }
}
