use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::exact::starting_family;
use super::{Objective, SearchResult};
use crate::combinat::{binom, rank, ColexCombinations, Order, SubsetCode};
use crate::error::{invalid, Error, Result};
use crate::family::Family;

/// Largest `C(n,k)` the local search will hold in memory.
pub const LOCAL_SEARCH_MAX_VERTICES: u64 = 1_000_000;

/// Swap-based descent from the best available construction of size `m`.
///
/// Each iteration trades a uniformly chosen member for a uniformly chosen
/// non-member and keeps the swap when `(objective, degree sum)` does not
/// increase lexicographically.
pub fn local_search(n: u32, k: u32, m: u64, objective: Objective, seed: u64, iterations: u64) -> Result<SearchResult> {
    if k == 0 || k > n {
        return Err(invalid(format!("local search needs 1 <= k <= n, got n={n}, k={k}")));
    }
    let total = binom(n as u64, k as u64);
    if total > BigUint::from(LOCAL_SEARCH_MAX_VERTICES) {
        return Err(Error::TooLarge(format!(
            "C({n}, {k}) = {total} exceeds {LOCAL_SEARCH_MAX_VERTICES}"
        )));
    }
    let (start, _) = starting_family(n, k, m, objective)?;
    let sets: Vec<SubsetCode> = ColexCombinations::new(n, k).collect();
    let total = sets.len();
    let mut state = State {
        n,
        k,
        in_family: vec![false; total],
        cnt: vec![0; total],
        members: Vec::new(),
        degree_sum: 0,
    };
    for a in start.iter() {
        let v = rank(Order::Colex, n, k, a)? as usize;
        state.add(v, &sets);
    }
    let mut value = state.value(objective);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    if (m as usize) < total && m > 0 {
        for _ in 0..iterations {
            done += 1;
            let pos = rng.gen_range(0..state.members.len());
            let out = state.members[pos];
            let inc = loop {
                let v = rng.gen_range(0..total);
                if !state.in_family[v] {
                    break v;
                }
            };
            let before = (value, state.degree_sum);
            state.remove(pos, &sets);
            state.add(inc, &sets);
            let after = state.value(objective);
            if (after, state.degree_sum) <= before {
                value = after;
            } else {
                let back = state.members.len() - 1;
                state.remove(back, &sets);
                state.add(out, &sets);
                // restore the original slot so the draw sequence stays reproducible
                let last = state.members.len() - 1;
                state.members.swap(pos, last);
            }
        }
    }
    let witness = Family::new(n, k, state.members.iter().map(|&v| sets[v]).collect())?;
    SearchResult {
        objective,
        optimum: value,
        witness,
        nodes_explored: done,
        proven_optimal: false,
    }
    .verified()
}

struct State {
    n: u32,
    k: u32,
    in_family: Vec<bool>,
    /// members disjoint from each vertex
    cnt: Vec<u64>,
    members: Vec<usize>,
    degree_sum: u64,
}

impl State {
    fn neighbours(&self, v: usize, sets: &[SubsetCode]) -> Vec<usize> {
        let rest: Vec<u32> = sets[v].complement(self.n).elements();
        ColexCombinations::new(rest.len() as u32, self.k)
            .map(|pick| {
                let mut b = SubsetCode::EMPTY;
                for i in pick.iter() {
                    b.insert(rest[(i - 1) as usize]);
                }
                rank(Order::Colex, self.n, self.k, &b).expect("valid k-set") as usize
            })
            .collect()
    }

    fn add(&mut self, v: usize, sets: &[SubsetCode]) {
        for w in self.neighbours(v, sets) {
            self.cnt[w] += 1;
            if self.in_family[w] {
                self.degree_sum += 2;
            }
        }
        self.in_family[v] = true;
        self.members.push(v);
    }

    fn remove(&mut self, pos: usize, sets: &[SubsetCode]) {
        let v = self.members.swap_remove(pos);
        self.in_family[v] = false;
        for w in self.neighbours(v, sets) {
            self.cnt[w] -= 1;
            if self.in_family[w] {
                self.degree_sum -= 2;
            }
        }
    }

    fn value(&self, objective: Objective) -> u64 {
        match objective {
            Objective::MaxDegree => self.members.iter().map(|&v| self.cnt[v]).max().unwrap_or(0),
            Objective::EdgeCount => self.degree_sum / 2,
        }
    }
}
