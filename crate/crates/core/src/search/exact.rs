use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::canon::is_canonical;
use super::{Objective, SearchResult};
use crate::bounds::EvalMode;
use crate::combinat::{binom, size_parameter, union_of_stars_size, ColexCombinations, Order, SubsetCode};
use crate::constructions::{explicit_family, order_segment, union_of_stars, ConstructionSpec};
use crate::error::{invalid, Error, Result};
use crate::family::Family;

/// Largest `C(n,k)` handled by branch and bound.
pub const BRANCH_AND_BOUND_MAX_VERTICES: u64 = 36;

/// Largest number of `m`-subsets the exhaustive search will visit.
pub const EXHAUSTIVE_MAX_SUBSETS: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SearchMode {
    /// Branch and bound when small enough, otherwise exhaustive.
    #[default]
    Auto,
    BranchAndBound,
    Exhaustive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub mode: SearchMode,
    /// Stop after this many search nodes; the result is then not proven optimal.
    pub node_limit: Option<u64>,
}

/// The `k`-subsets of `[n]` in colex order with their Kneser adjacency.
struct Kneser {
    n: u32,
    k: u32,
    sets: Vec<SubsetCode>,
}

impl Kneser {
    fn new(n: u32, k: u32, max_vertices: u64) -> Result<Self> {
        if k == 0 {
            return Err(invalid("searches need k >= 1"));
        }
        if k > n {
            return Err(invalid(format!("k = {k} exceeds n = {n}")));
        }
        let total = binom(n as u64, k as u64);
        if total > BigUint::from(max_vertices) {
            return Err(Error::TooLarge(format!("C({n}, {k}) = {total} exceeds {max_vertices}")));
        }
        Ok(Kneser {
            n,
            k,
            sets: ColexCombinations::new(n, k).collect(),
        })
    }

    fn len(&self) -> usize {
        self.sets.len()
    }

    fn masks(&self) -> Vec<u64> {
        self.sets.iter().map(|s| s.low_word()).collect()
    }

    fn adjacency_lists(&self) -> Vec<Vec<usize>> {
        self.sets
            .iter()
            .map(|a| (0..self.len()).filter(|&j| a.is_disjoint(&self.sets[j])).collect())
            .collect()
    }

    fn family(&self, chosen: &[usize]) -> Result<Family> {
        Family::new(self.n, self.k, chosen.iter().map(|&i| self.sets[i]).collect())
    }
}

/// Best of the threshold family, a union of stars and the lex segment of size `m`.
pub(crate) fn starting_family(n: u32, k: u32, m: u64, objective: Objective) -> Result<(Family, u64)> {
    let mut candidates = vec![order_segment(Order::Lex, n, k, m)?];
    if let Ok(p) = size_parameter(n as u64, k as u64, &BigUint::from(m)) {
        if p.s >= 1 && p.s < n as u64 {
            let spec = ConstructionSpec::new(n, k, p.s as u32, p.lambda.clone());
            if let Ok((f, _)) = explicit_family(&spec, EvalMode::Forced) {
                candidates.push(f);
            }
        }
        if union_of_stars_size(n as u64, k as u64, p.s) == BigUint::from(m) {
            candidates.push(union_of_stars(n, k, &SubsetCode::prefix(p.s as u32))?);
        }
    }
    let mut best: Option<(Family, u64)> = None;
    for f in candidates {
        if f.len() as u64 != m {
            continue;
        }
        let v = objective.measure(&f)?;
        if best.as_ref().is_none_or(|(_, b)| v < *b) {
            best = Some((f, v));
        }
    }
    Ok(best.expect("the lex segment always has size m"))
}

fn check_size(g: &Kneser, m: u64) -> Result<()> {
    if m > g.len() as u64 {
        return Err(Error::OutOfRange {
            what: "family size",
            detail: format!("{m} > C({}, {}) = {}", g.n, g.k, g.len()),
        });
    }
    Ok(())
}

/// Minimum of the objective over all `m`-subsets of `C([n], k)`.
///
/// The witness is the least optimal family when families are compared as
/// increasing sequences of colex ranks.
pub fn exact_minimize(n: u32, k: u32, m: u64, objective: Objective) -> Result<SearchResult> {
    exact_minimize_with(n, k, m, objective, &SearchOptions::default())
}

pub fn exact_minimize_with(
    n: u32,
    k: u32,
    m: u64,
    objective: Objective,
    options: &SearchOptions,
) -> Result<SearchResult> {
    let small = binom(n as u64, k as u64) <= BigUint::from(BRANCH_AND_BOUND_MAX_VERTICES);
    match options.mode {
        SearchMode::BranchAndBound => branch_and_bound(n, k, m, objective, options.node_limit),
        SearchMode::Exhaustive => exhaustive_minimize(n, k, m, objective),
        SearchMode::Auto if small && k >= 1 => branch_and_bound(n, k, m, objective, options.node_limit),
        SearchMode::Auto => exhaustive_minimize(n, k, m, objective),
    }
}

/// All optimal families up to relabelling of the ground set, each given by
/// its canonical (lex-least) representative, in increasing order.
pub fn enumerate_optimal(n: u32, k: u32, m: u64, objective: Objective) -> Result<(SearchResult, Vec<Family>)> {
    let best = branch_and_bound(n, k, m, objective, None)?;
    let g = Kneser::new(n, k, BRANCH_AND_BOUND_MAX_VERTICES)?;
    let mut bb = Bnb::new(&g, m as usize, objective, best.optimum as i64, true, None);
    bb.run();
    let families = bb.found.iter().map(|c| g.family(c)).collect::<Result<Vec<_>>>()?;
    Ok((best, families))
}

fn branch_and_bound(n: u32, k: u32, m: u64, objective: Objective, node_limit: Option<u64>) -> Result<SearchResult> {
    let g = Kneser::new(n, k, BRANCH_AND_BOUND_MAX_VERTICES)?;
    check_size(&g, m)?;
    let (start, start_value) = starting_family(n, k, m, objective)?;
    let mut bb = Bnb::new(&g, m as usize, objective, start_value as i64, false, node_limit);
    bb.run();
    let (witness, optimum) = match bb.found.pop() {
        Some(chosen) => (g.family(&chosen)?, bb.found_value),
        None => (start, start_value),
    };
    SearchResult {
        objective,
        optimum,
        witness,
        nodes_explored: bb.nodes,
        proven_optimal: !bb.aborted,
    }
    .verified()
}

struct Bnb<'a> {
    g: &'a Kneser,
    adj: Vec<u64>,
    masks: Vec<u64>,
    m: usize,
    objective: Objective,
    /// accept families whose value is at most this
    limit: i64,
    collect_all: bool,
    found: Vec<Vec<usize>>,
    found_value: u64,
    chosen: Vec<usize>,
    chosen_masks: Vec<u64>,
    nodes: u64,
    node_limit: Option<u64>,
    aborted: bool,
}

impl<'a> Bnb<'a> {
    fn new(g: &'a Kneser, m: usize, objective: Objective, limit: i64, collect_all: bool, node_limit: Option<u64>) -> Self {
        let masks = g.masks();
        let adj = g
            .adjacency_lists()
            .iter()
            .map(|l| l.iter().fold(0u64, |acc, &j| acc | 1 << j))
            .collect();
        Bnb {
            g,
            adj,
            masks,
            m,
            objective,
            limit,
            collect_all,
            found: Vec::new(),
            found_value: 0,
            chosen: Vec::with_capacity(m),
            chosen_masks: Vec::with_capacity(m),
            nodes: 0,
            node_limit,
            aborted: false,
        }
    }

    fn run(&mut self) {
        let cnt = [0u8; 64];
        self.dfs(&cnt, 0, 0, 0);
    }

    /// `cnt[w]` is the number of chosen sets disjoint from `w`; `set` the chosen vertices.
    fn dfs(&mut self, cnt: &[u8; 64], set: u64, value: u64, next: usize) {
        self.nodes += 1;
        if self.node_limit.is_some_and(|l| self.nodes > l) {
            self.aborted = true;
            return;
        }
        if self.chosen.len() == self.m {
            if value as i64 <= self.limit {
                self.found.push(self.chosen.clone());
                self.found_value = value;
                if !self.collect_all {
                    self.limit = value as i64 - 1;
                }
            }
            return;
        }
        let total = self.g.len();
        let r = self.m - self.chosen.len();
        for v in next..=total - r {
            if self.limit < 0 || self.aborted {
                return;
            }
            let touched = self.adj[v] & set;
            let new_value = match self.objective {
                Objective::MaxDegree => {
                    let mut best = value.max(cnt[v] as u64);
                    let mut t = touched;
                    while t != 0 {
                        let w = t.trailing_zeros() as usize;
                        t &= t - 1;
                        best = best.max(cnt[w] as u64 + 1);
                    }
                    best
                }
                Objective::EdgeCount => value + cnt[v] as u64,
            };
            if new_value as i64 > self.limit {
                continue;
            }
            let mut next_cnt = *cnt;
            let mut t = self.adj[v];
            while t != 0 {
                let w = t.trailing_zeros() as usize;
                t &= t - 1;
                next_cnt[w] += 1;
            }
            if self.lower_bound(&next_cnt, new_value, v + 1, r - 1) as i64 > self.limit {
                continue;
            }
            self.chosen.push(v);
            self.chosen_masks.push(self.masks[v]);
            if is_canonical(self.g.n, &self.chosen_masks) {
                self.dfs(&next_cnt, set | 1 << v, new_value, v + 1);
            }
            self.chosen.pop();
            self.chosen_masks.pop();
        }
    }

    /// Every later vertex brings at least its current count of chosen
    /// neighbours, so the `r` smallest such counts bound the final value.
    fn lower_bound(&self, cnt: &[u8; 64], value: u64, from: usize, r: usize) -> u64 {
        if r == 0 {
            return value;
        }
        let mut hist = [0u32; 65];
        for &c in &cnt[from..self.g.len()] {
            hist[c as usize] += 1;
        }
        let mut need = r as u32;
        let mut sum = 0u64;
        for (c, &h) in hist.iter().enumerate() {
            let take = h.min(need);
            sum += take as u64 * c as u64;
            need -= take;
            if need == 0 {
                return match self.objective {
                    Objective::MaxDegree => value.max(c as u64),
                    Objective::EdgeCount => value + sum,
                };
            }
        }
        u64::MAX
    }
}

/// Visits every `m`-subset in increasing order of colex-rank sequences.
pub fn exhaustive_minimize(n: u32, k: u32, m: u64, objective: Objective) -> Result<SearchResult> {
    let total = binom(n as u64, k as u64);
    let count = total
        .to_u64()
        .map(|t| binom(t, m))
        .ok_or_else(|| Error::TooLarge(format!("C({n}, {k}) = {total} vertices")))?;
    if count > BigUint::from(EXHAUSTIVE_MAX_SUBSETS) {
        return Err(Error::TooLarge(format!(
            "exhaustive search over C({total}, {m}) = {count} families exceeds {EXHAUSTIVE_MAX_SUBSETS}"
        )));
    }
    let g = Kneser::new(n, k, u64::MAX)?;
    check_size(&g, m)?;
    let mut ex = Exhaustive {
        adj: g.adjacency_lists(),
        in_set: vec![false; g.len()],
        cnt: vec![0; g.len()],
        m: m as usize,
        objective,
        chosen: Vec::new(),
        best: None,
        nodes: 0,
    };
    ex.dfs(0, 0);
    let (optimum, chosen) = ex.best.expect("m <= C(n,k) so some family exists");
    SearchResult {
        objective,
        optimum,
        witness: g.family(&chosen)?,
        nodes_explored: ex.nodes,
        proven_optimal: true,
    }
    .verified()
}

struct Exhaustive {
    adj: Vec<Vec<usize>>,
    in_set: Vec<bool>,
    cnt: Vec<u32>,
    m: usize,
    objective: Objective,
    chosen: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
    nodes: u64,
}

impl Exhaustive {
    fn dfs(&mut self, next: usize, value: u64) {
        self.nodes += 1;
        if self.chosen.len() == self.m {
            if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
                self.best = Some((value, self.chosen.clone()));
            }
            return;
        }
        let r = self.m - self.chosen.len();
        for v in next..=self.in_set.len() - r {
            let new_value = match self.objective {
                Objective::MaxDegree => {
                    let mut best = value.max(self.cnt[v] as u64);
                    for &w in &self.adj[v] {
                        if self.in_set[w] {
                            best = best.max(self.cnt[w] as u64 + 1);
                        }
                    }
                    best
                }
                Objective::EdgeCount => value + self.cnt[v] as u64,
            };
            for &w in &self.adj[v] {
                self.cnt[w] += 1;
            }
            self.in_set[v] = true;
            self.chosen.push(v);
            self.dfs(v + 1, new_value);
            self.chosen.pop();
            self.in_set[v] = false;
            for &w in &self.adj[v] {
                self.cnt[w] -= 1;
            }
        }
    }
}
