use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::bounds::{BoundReport, BoundValue, Relation};
use crate::combinat::{binom, binom_q, small_binom, ColexCombinations, SubsetCode};
use crate::error::{invalid, Error, Result};
use crate::exact::{from_biguint, rat, RadicalExpr, Rounding};
use crate::family::Family;

/// `k/(n-l)`, the stated bound on `σ₂/σ₁` for the bipartite Kneser graph
/// between `C([n], k)` and `C([n], l)`.
///
/// It is exact when `k = l`. For `k < l` the true ratio is
/// `√(kl/((n-k)(n-l)))` (see [`singular_ratio_sq_exact`]), which lies
/// strictly between `k/(n-l)` and `l/(n-k)`.
pub fn singular_ratio_bound(n: u64, k: u64, l: u64) -> Result<BigRational> {
    if !(k <= l && 2 * l <= n) {
        return Err(invalid(format!("need k <= l <= n/2, got n={n}, k={k}, l={l}")));
    }
    Ok(rat(k as i64, (n - l) as i64))
}

/// Exact `σ₂²/σ₁²` for the bipartite Kneser graph `C([n], k) ↔ C([n], l)`
/// on desk-scale instances (`C(n, k) <= 100`).
///
/// `M = AᵀA` has entries `C(n - |K ∪ K'|, l)`. A candidate eigenvector is
/// built for every level, and the product of `M - θI` over the resulting
/// eigenvalues is verified to vanish, so no eigenvalue is missed.
pub fn singular_ratio_sq_exact(n: u32, k: u32, l: u32) -> Result<BigRational> {
    singular_ratio_bound(n as u64, k as u64, l as u64)?;
    let sets: Vec<SubsetCode> = ColexCombinations::new(n, k).collect();
    let size = sets.len();
    if size > 100 {
        return Err(Error::TooLarge(format!("C({n}, {k}) = {size} exceeds 100")));
    }
    let m: Vec<Vec<BigInt>> = sets
        .iter()
        .map(|a| {
            sets.iter()
                .map(|b| BigInt::from(small_binom(n - a.union(b).len(), l)))
                .collect()
        })
        .collect();
    let mut thetas: Vec<BigRational> = Vec::new();
    for i in 0..=k {
        // product over disjoint pairs (2t-1, 2t) of ([2t-1 ∈ K] - [2t ∈ K])
        let v: Vec<BigInt> = sets
            .iter()
            .map(|a| {
                (1..=i)
                    .map(|t| a.contains(2 * t - 1) as i64 - a.contains(2 * t) as i64)
                    .product::<i64>()
                    .into()
            })
            .collect();
        let mv: Vec<BigInt> = m.iter().map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
        let pivot = v.iter().position(|x| !x.is_zero()).expect("i <= k leaves a nonzero entry");
        let theta = BigRational::new(mv[pivot].clone(), v[pivot].clone());
        for (x, y) in mv.iter().zip(&v) {
            if BigRational::from_integer(x.clone()) != &theta * BigRational::from_integer(y.clone()) {
                return Err(Error::Invariant(format!("level {i} vector is not an eigenvector")));
            }
        }
        thetas.push(theta);
    }
    // every θ is an integer: M is integral and the vectors are ±1/0
    let mut distinct: Vec<BigInt> = thetas.iter().map(|t| t.to_integer()).collect();
    distinct.sort();
    distinct.dedup();
    let mut prod: Vec<Vec<BigInt>> = (0..size)
        .map(|r| (0..size).map(|c| BigInt::from((r == c) as i64)).collect())
        .collect();
    for theta in &distinct {
        let shifted: Vec<Vec<BigInt>> = m
            .iter()
            .enumerate()
            .map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, x)| if r == c { x - theta } else { x.clone() })
                    .collect()
            })
            .collect();
        prod = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| (0..size).map(|t| &prod[r][t] * &shifted[t][c]).sum())
                    .collect()
            })
            .collect();
    }
    if prod.iter().flatten().any(|x| !x.is_zero()) {
        return Err(Error::Invariant("level eigenvalues do not exhaust the spectrum".into()));
    }
    let top = &thetas[0];
    Ok(thetas[1..]
        .iter()
        .max()
        .map(|t| t / top)
        .unwrap_or_else(BigRational::zero))
}

/// Expander mixing check for `X ⊆ C([n], a)`, `Y ⊆ C([n], b)` in the
/// bipartite Kneser graph, with `σ₂/σ₁` replaced by `a/(n-b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixingCheck {
    pub edges: u64,
    pub alpha: BigRational,
    pub beta: BigRational,
    /// `e(X,Y)/e(U,V) - αβ`.
    pub deviation: BigRational,
    pub ratio: BigRational,
    /// `dev² <= r²·α(1-α)β(1-β)`.
    pub sharp_holds: bool,
    /// `dev² <= r²·αβ`.
    pub weak_holds: bool,
}

pub fn expander_mixing_check(x: &Family, y: &Family) -> Result<MixingCheck> {
    let (n, a, b) = (x.n() as u64, x.k() as u64, y.k() as u64);
    let ratio = singular_ratio_bound(n, a, b)?;
    let edges = Family::bipartite_edge_count(x, y)?;
    let total_edges = from_biguint(binom(n, a) * binom(n - a, b));
    let alpha = x.density();
    let beta = y.density();
    let deviation = BigRational::new(edges.into(), BigInt::one()) / total_edges - &alpha * &beta;
    let dev2 = &deviation * &deviation;
    let r2 = &ratio * &ratio;
    let one = BigRational::one();
    let sharp = &r2 * &alpha * (&one - &alpha) * &beta * (&one - &beta);
    let weak = &r2 * &alpha * &beta;
    Ok(MixingCheck {
        edges,
        sharp_holds: dev2 <= sharp,
        weak_holds: dev2 <= weak,
        alpha,
        beta,
        deviation,
        ratio,
    })
}

/// Lower bounds on `e/|C|` and `e/|B|` for a star split with densities
/// `γ` (of the `(k-1)`-set side) and `β` (of the `k`-set side).
pub fn mixing_bounds(gamma: &BigRational, beta: &BigRational, n: u64, k: u64) -> Result<(BoundReport, BoundReport)> {
    if n < 2 * k + 1 || k == 0 {
        return Err(invalid(format!("need k >= 1 and n >= 2k+1, got n={n}, k={k}")));
    }
    let unit = |x: &BigRational| !x.is_negative() && *x <= BigRational::one();
    if !unit(gamma) || !unit(beta) {
        return Err(invalid(format!("densities must lie in [0, 1], got {gamma}, {beta}")));
    }
    let r = rat(k as i64, (n - k) as i64);
    let (ni, ki) = (n as i64, k as i64);
    let core = if gamma.is_zero() {
        BoundValue::Vacuous
    } else {
        let d = binom_q(ni - ki, ki);
        BoundValue::from_expr(RadicalExpr::new(&d * beta, -(&d * &r), beta / gamma)?)
    };
    let rest = if beta.is_zero() {
        BoundValue::Vacuous
    } else {
        let d = binom_q(ni - ki - 1, ki - 1);
        let rad = gamma * (BigRational::one() - gamma) / beta;
        BoundValue::from_expr(RadicalExpr::new(&d * gamma, -(&d * &r), rad)?)
    };
    Ok((
        BoundReport::new("star_split_core", core, Rounding::Down).with_hypothesis("n >= 2k+1", true),
        BoundReport::new("star_split_rest", rest, Rounding::Down).with_hypothesis("n >= 2k+1", true),
    ))
}

/// Star split at element `n`: `C = F_{n}^{n}` against `B = F_{n}^∅`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSplit {
    pub gamma: BigRational,
    pub beta: BigRational,
    pub edges: u64,
    pub core_size: usize,
    pub rest_size: usize,
    pub core: BoundReport,
    pub rest: BoundReport,
}

impl StarSplit {
    pub fn holds(&self) -> bool {
        self.core.holds() && self.rest.holds()
    }
}

pub fn star_split_check(family: &Family) -> Result<StarSplit> {
    let (n, k) = (family.n(), family.k());
    let last = SubsetCode::from_elements(n, &[n])?;
    let c = family.slice(&last, &last)?.family;
    let b = family.slice(&last, &SubsetCode::EMPTY)?.family;
    let gamma = c.density();
    let beta = b.density();
    let edges = Family::bipartite_edge_count(&c, &b)?;
    let (core, rest) = mixing_bounds(&gamma, &beta, n as u64, k as u64)?;
    let per = |size: usize| {
        if size == 0 {
            BigRational::zero()
        } else {
            BigRational::new(edges.into(), size.into())
        }
    };
    Ok(StarSplit {
        core: core.compare(per(c.len()), Relation::AtLeast),
        rest: rest.compare(per(b.len()), Relation::AtLeast),
        gamma,
        beta,
        edges,
        core_size: c.len(),
        rest_size: b.len(),
    })
}
