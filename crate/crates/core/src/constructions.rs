//! Builders for unions of stars, the threshold and random near-extremal
//! families, and lex/colex initial segments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::EvalMode;
use crate::combinat::{binom_signed, count_from_lambda, unrank, ColexCombinations, Order, SubsetCode};
use crate::error::{invalid, Error, Result};
use crate::exact::int;
use crate::family::Family;

/// Redraws allowed before the random builder gives up.
pub const MAX_RANDOM_ATTEMPTS: u64 = 1000;

/// Parameters shared by the threshold and random builders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub n: u32,
    pub k: u32,
    pub s: u32,
    pub lambda: BigRational,
    pub seed: Option<u64>,
}

impl ConstructionSpec {
    pub fn new(n: u32, k: u32, s: u32, lambda: BigRational) -> Self {
        ConstructionSpec {
            n,
            k,
            s,
            lambda,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.s == 0 {
            return Err(invalid("constructions need k >= 1 and s >= 1"));
        }
        if self.s + 1 > self.n || self.k > self.n {
            return Err(invalid(format!(
                "need s+1 <= n and k <= n, got n={}, k={}, s={}",
                self.n, self.k, self.s
            )));
        }
        Ok(())
    }

    /// Target size `C(n,k) - C(n-s,k) + (λ-s)·C(n-s-1,k-1)`; must be an integer.
    pub fn target_size(&self) -> Result<usize> {
        self.validate()?;
        let m = count_from_lambda(self.n as u64, self.k as u64, self.s as u64, &self.lambda)?;
        m.to_usize()
            .ok_or_else(|| Error::TooLarge(format!("target size {m} does not fit in memory")))
    }
}

/// All `k`-sets meeting `S`.
pub fn union_of_stars(n: u32, k: u32, centres: &SubsetCode) -> Result<Family> {
    if k == 0 {
        return Err(invalid("stars need k >= 1"));
    }
    if !centres.fits(n) {
        return Err(invalid(format!("{centres} is not a subset of [{n}]")));
    }
    let members = ColexCombinations::new(n, k)
        .filter(|a| !a.is_disjoint(centres))
        .collect();
    Family::new(n, k, members)
}

/// `k`-sets `X ⊆ [within]` with `|X ∩ [head]| = j`, unsorted.
fn sets_meeting(head: u32, j: u32, within: u32, k: u32, out: &mut Vec<SubsetCode>) {
    if j > k || within < head {
        return;
    }
    let tails: Vec<SubsetCode> = ColexCombinations::new(within - head, k - j).collect();
    for h in ColexCombinations::new(head, j) {
        for t in &tails {
            let mut x = h;
            for e in t.iter() {
                x.insert(e + head);
            }
            out.push(x);
        }
    }
}

/// Remove `excess` members from the singleton-intersection part: each step
/// takes the star (among `1..=head`) holding the most such members, lowest
/// index on ties, and drops its member of largest colex rank.
fn trim(members: Vec<SubsetCode>, head: u32, excess: usize) -> Result<Vec<SubsetCode>> {
    let mask = SubsetCode::prefix(head);
    let mut per_star: Vec<Vec<SubsetCode>> = vec![Vec::new(); head as usize];
    for a in &members {
        let meet = a.intersection(&mask);
        if meet.len() == 1 {
            per_star[(meet.min_element().unwrap() - 1) as usize].push(*a);
        }
    }
    let available: usize = per_star.iter().map(Vec::len).sum();
    if available < excess {
        return Err(Error::Construction(format!(
            "need to remove {excess} singleton-intersection members, only {available} exist"
        )));
    }
    for list in &mut per_star {
        list.sort_unstable();
    }
    let mut removed = Vec::with_capacity(excess);
    for _ in 0..excess {
        let (i, _) = per_star
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.len().cmp(&b.len()).then(j.cmp(i)))
            .expect("head >= 1");
        removed.push(per_star[i].pop().expect("nonempty star"));
    }
    removed.sort_unstable();
    Ok(members
        .into_iter()
        .filter(|a| removed.binary_search(a).is_err())
        .collect())
}

/// The threshold family: all `k`-sets meeting `[s+1]` at least twice, plus
/// the sets meeting it once that lie inside `[t]`, trimmed to the target size.
///
/// `t` is the least integer with `C(t-s-1, k-1) >= (λ/(s+1))·C(n-s-1, k-1)`.
pub fn explicit_family(spec: &ConstructionSpec, mode: EvalMode) -> Result<(Family, u32)> {
    spec.validate()?;
    let (n, k, s) = (spec.n, spec.k, spec.s);
    if n < 12 * k * s && mode == EvalMode::Gated {
        return Err(Error::Hypothesis(format!("n >= 12*k*s fails for n={n}, k={k}, s={s}")));
    }
    let m = spec.target_size()?;
    let want = &spec.lambda / int(s + 1) * BigRational::from_integer(binom_signed(n as i64 - s as i64 - 1, k as i64 - 1).into());
    let t = (s + 1..=n)
        .find(|&t| {
            BigRational::from_integer(BigInt::from(binom_signed(t as i64 - s as i64 - 1, k as i64 - 1))) >= want
        })
        .ok_or_else(|| Error::Construction("no threshold t <= n".into()))?;
    let head = s + 1;
    let mut members = Vec::new();
    for j in 2..=k.min(head) {
        sets_meeting(head, j, n, k, &mut members);
    }
    sets_meeting(head, 1, t, k, &mut members);
    if members.len() < m {
        return Err(Error::Construction(format!(
            "threshold family has {} members, fewer than the target {m}",
            members.len()
        )));
    }
    let excess = members.len() - m;
    let members = trim(members, head, excess)?;
    Ok((Family::new(n, k, members)?, t))
}

fn one_draw(spec: &ConstructionSpec, seed: u64, candidates: &[SubsetCode], core: &[SubsetCode]) -> Vec<SubsetCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = &spec.lambda / int(spec.s + 1);
    let num = q.numer().to_biguint().expect("non-negative probability");
    let den = q.denom().to_biguint().expect("positive denominator");
    let mut out = core.to_vec();
    for c in candidates {
        // include iff u / 2^64 < num / den
        let u = rng.next_u64();
        if num_bigint::BigUint::from(u) * &den < (&num << 64u32) {
            out.push(*c);
        }
    }
    out
}

/// The random family: every set meeting `[s+1]` at least twice, plus each
/// set meeting it exactly once independently with probability `λ/(s+1)`.
///
/// Candidates are visited in colex order, one 64-bit draw each from
/// ChaCha8 seeded with `seed`. An undersized draw is repeated with
/// `seed + 1`, `seed + 2`, ...; an oversized one is trimmed as in
/// [`explicit_family`].
pub fn random_family(spec: &ConstructionSpec) -> Result<Family> {
    spec.validate()?;
    let seed = spec
        .seed
        .ok_or_else(|| invalid("the random construction needs a seed"))?;
    let m = spec.target_size()?;
    let (n, k, head) = (spec.n, spec.k, spec.s + 1);
    let mut core = Vec::new();
    for j in 2..=k.min(head) {
        sets_meeting(head, j, n, k, &mut core);
    }
    core.sort_unstable();
    let mut candidates = Vec::new();
    sets_meeting(head, 1, n, k, &mut candidates);
    candidates.sort_unstable();
    for attempt in 0..MAX_RANDOM_ATTEMPTS {
        let members = one_draw(spec, seed.wrapping_add(attempt), &candidates, &core);
        if members.len() < m {
            continue;
        }
        let excess = members.len() - m;
        return Family::new(n, k, trim(members, head, excess)?);
    }
    Err(Error::Construction(format!(
        "random construction undersized in {MAX_RANDOM_ATTEMPTS} attempts"
    )))
}

/// The first `m` sets of `C([n], k)` in the given order.
pub fn order_segment(order: Order, n: u32, k: u32, m: u64) -> Result<Family> {
    let total = crate::combinat::binom_u64(n as u64, k as u64)
        .ok_or_else(|| Error::TooLarge(format!("C({n}, {k}) does not fit in 64 bits")))?;
    if m > total {
        return Err(Error::OutOfRange {
            what: "segment length",
            detail: format!("{m} > C({n}, {k}) = {total}"),
        });
    }
    let members: Vec<SubsetCode> = match order {
        Order::Colex => ColexCombinations::new(n, k).take(m as usize).collect(),
        Order::Lex => (0..m).map(|r| unrank(Order::Lex, n, k, r)).collect::<Result<_>>()?,
    };
    Family::new(n, k, members)
}

impl ConstructionSpec {
    /// The per-star counts of singleton-intersection members of a family.
    pub fn singleton_counts(&self, family: &Family) -> Vec<usize> {
        let mask = SubsetCode::prefix(self.s + 1);
        let mut counts = vec![0usize; (self.s + 1) as usize];
        for a in family {
            let meet = a.intersection(&mask);
            if meet.len() == 1 {
                counts[(meet.min_element().unwrap() - 1) as usize] += 1;
            }
        }
        counts
    }
}
