use serde_json::{json, Value};

use crate::combinat::SubsetCode;
use crate::error::{invalid, Error, Result};
use crate::family::{DegreeStrategy, Family};

/// Largest family the brute-force maximum matching accepts.
pub const BRUTE_FORCE_MAX_MEMBERS: usize = 64;

/// Pairwise disjoint members of a family, in the order they were chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingResult {
    pub members: Vec<SubsetCode>,
    pub size: usize,
}

impl MatchingResult {
    fn new(members: Vec<SubsetCode>) -> Self {
        let size = members.len();
        MatchingResult { members, size }
    }

    pub fn is_valid_for(&self, family: &Family) -> bool {
        self.size == self.members.len()
            && self.members.iter().all(|a| family.contains(a))
            && self
                .members
                .iter()
                .enumerate()
                .all(|(i, a)| self.members[i + 1..].iter().all(|b| a.is_disjoint(b)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "size": self.size,
            "members": self.members.iter().map(|a| a.elements()).collect::<Vec<_>>(),
        })
    }
}

/// Repeatedly take a member of maximum degree in what remains (lowest colex
/// rank on ties) and keep only the members disjoint from it.
pub fn greedy_matching(family: &Family) -> Result<MatchingResult> {
    if family.is_empty() {
        return Err(invalid("greedy matching needs a nonempty family"));
    }
    let mut current = family.clone();
    let mut chosen = Vec::new();
    while !current.is_empty() {
        let profile = current.degree_profile(DegreeStrategy::Auto)?;
        let best = profile
            .degrees
            .iter()
            .enumerate()
            .max_by(|(i, a), (j, b)| a.cmp(b).then(j.cmp(i)))
            .map(|(i, _)| current.members()[i])
            .expect("nonempty");
        chosen.push(best);
        current = current.filter(|b| *b != best && b.is_disjoint(&best));
    }
    Ok(MatchingResult::new(chosen))
}

/// A largest matching, found by exhaustive branching.
pub fn maximum_matching(family: &Family) -> Result<MatchingResult> {
    let len = family.len();
    if len > BRUTE_FORCE_MAX_MEMBERS {
        return Err(Error::TooLarge(format!(
            "brute-force matching needs at most {BRUTE_FORCE_MAX_MEMBERS} members, got {len}"
        )));
    }
    let sets = family.members();
    let adj: Vec<u64> = sets
        .iter()
        .enumerate()
        .map(|(i, a)| {
            (0..len)
                .filter(|&j| j != i && a.is_disjoint(&sets[j]))
                .fold(0u64, |acc, j| acc | 1 << j)
        })
        .collect();
    let all = if len == 64 { u64::MAX } else { (1u64 << len) - 1 };
    let mut best = 0u64;
    grow(&adj, 0, all, &mut best);
    Ok(MatchingResult::new(
        (0..len).filter(|&i| best >> i & 1 == 1).map(|i| sets[i]).collect(),
    ))
}

fn grow(adj: &[u64], clique: u64, mut candidates: u64, best: &mut u64) {
    if clique.count_ones() > best.count_ones() {
        *best = clique;
    }
    while candidates != 0 {
        if clique.count_ones() + candidates.count_ones() <= best.count_ones() {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        candidates &= candidates - 1;
        grow(adj, clique | 1 << v, candidates & adj[v], best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_plus_one() {
        let f = Family::from_sets(5, 2, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5], &[2, 3]]).unwrap();
        let g = greedy_matching(&f).unwrap();
        assert_eq!(g.members[0].elements(), vec![2, 3]);
        assert_eq!(g.members[1].elements(), vec![1, 4]);
        assert_eq!(g.size, 2);
        assert!(g.is_valid_for(&f));
    }

    #[test]
    fn star_and_complete() {
        let star = Family::star(6, 3, 2).unwrap();
        assert_eq!(greedy_matching(&star).unwrap().size, 1);
        let all = Family::complete(5, 2).unwrap();
        assert_eq!(greedy_matching(&all).unwrap().size, 2);
        assert_eq!(maximum_matching(&all).unwrap().size, 2);
        assert!(greedy_matching(&Family::empty(5, 2).unwrap()).is_err());
    }

    #[test]
    fn maximum_beats_or_ties_greedy() {
        let all = Family::complete(7, 2).unwrap();
        let m = maximum_matching(&all).unwrap();
        assert_eq!(m.size, 3);
        assert!(m.is_valid_for(&all));
        assert!(maximum_matching(&Family::complete(12, 2).unwrap()).is_err());
    }
}
