//! Set families, induced Kneser degrees, slices and bipartite edge counts.

mod degree;
mod text;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::index;
use rand::Rng;

use crate::combinat::{binom, binom_signed, ColexCombinations, SubsetCode, MAX_N};
use crate::error::{invalid, Error, Result};

pub use degree::{DegreeProfile, DegreeStrategy, ZETA_MAX_N};

/// A set of `k`-subsets of `[n]`, kept sorted in colex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Family {
    n: u32,
    k: u32,
    members: Vec<SubsetCode>,
}

/// Result of [`Family::slice`]: the sliced family on a contiguous ground set
/// together with the original label of every new element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub family: Family,
    /// `labels[j - 1]` is the original element renamed to `j`.
    pub labels: Vec<u32>,
}

impl Family {
    /// Build a family, rejecting duplicates and members of the wrong shape.
    pub fn new(n: u32, k: u32, mut members: Vec<SubsetCode>) -> Result<Self> {
        check_ground(n)?;
        for m in &members {
            if !m.fits(n) || m.len() != k {
                return Err(invalid(format!("{m} is not a {k}-subset of [{n}]")));
            }
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateMember(w[0].to_string()));
        }
        Ok(Family { n, k, members })
    }

    /// Build from 1-based element lists.
    pub fn from_sets(n: u32, k: u32, sets: &[&[u32]]) -> Result<Self> {
        let members = sets
            .iter()
            .map(|s| SubsetCode::from_elements(n, s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, k, members)
    }

    /// Members must already be valid, distinct and colex-sorted.
    pub(crate) fn from_sorted(n: u32, k: u32, members: Vec<SubsetCode>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(members.iter().all(|m| m.fits(n) && m.len() == k));
        Family { n, k, members }
    }

    pub fn empty(n: u32, k: u32) -> Result<Self> {
        check_ground(n)?;
        Ok(Family { n, k, members: Vec::new() })
    }

    /// Every `k`-subset of `[n]`.
    pub fn complete(n: u32, k: u32) -> Result<Self> {
        check_ground(n)?;
        Ok(Self::from_sorted(n, k, ColexCombinations::new(n, k).collect()))
    }

    /// The star `D_x`: all `k`-sets containing `x`.
    pub fn star(n: u32, k: u32, x: u32) -> Result<Self> {
        check_ground(n)?;
        if x == 0 || x > n {
            return Err(invalid(format!("star centre {x} outside [{n}]")));
        }
        let members = ColexCombinations::new(n, k).filter(|a| a.contains(x)).collect();
        Ok(Self::from_sorted(n, k, members))
    }

    /// A uniformly random `size`-subfamily of `C([n], k)`.
    pub fn random<R: Rng + ?Sized>(n: u32, k: u32, size: usize, rng: &mut R) -> Result<Self> {
        let all: Vec<SubsetCode> = ColexCombinations::new(n, k).collect();
        if size > all.len() {
            return Err(Error::OutOfRange {
                what: "family size",
                detail: format!("{size} > C({n}, {k}) = {}", all.len()),
            });
        }
        let mut picks = index::sample(rng, all.len(), size).into_vec();
        picks.sort_unstable();
        Ok(Self::from_sorted(n, k, picks.into_iter().map(|i| all[i]).collect()))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetCode] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SubsetCode> {
        self.members.iter()
    }

    pub fn contains(&self, set: &SubsetCode) -> bool {
        self.members.binary_search(set).is_ok()
    }

    /// Position of a member in colex order.
    pub fn position(&self, set: &SubsetCode) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    pub fn insert(&mut self, set: SubsetCode) -> Result<()> {
        if !set.fits(self.n) || set.len() != self.k {
            return Err(invalid(format!("{set} is not a {}-subset of [{}]", self.k, self.n)));
        }
        match self.members.binary_search(&set) {
            Ok(_) => Err(Error::DuplicateMember(set.to_string())),
            Err(i) => {
                self.members.insert(i, set);
                Ok(())
            }
        }
    }

    pub fn remove(&mut self, set: &SubsetCode) -> bool {
        match self.members.binary_search(set) {
            Ok(i) => {
                self.members.remove(i);
                true
            }
            Err(_) => false,
        }
    }

    /// Members satisfying a predicate, as a family on the same ground set.
    pub fn filter(&self, mut keep: impl FnMut(&SubsetCode) -> bool) -> Family {
        let members = self.members.iter().copied().filter(|a| keep(a)).collect();
        Family::from_sorted(self.n, self.k, members)
    }

    /// `α = |F| / C(n, k)`.
    pub fn density(&self) -> BigRational {
        BigRational::new(self.len().into(), BigInt::from(binom(self.n as u64, self.k as u64)))
    }

    /// Union of all members.
    pub fn support(&self) -> SubsetCode {
        self.members.iter().fold(SubsetCode::EMPTY, |acc, a| acc.union(a))
    }

    /// Number of members containing each element; entry `i` is element `i + 1`.
    pub fn star_counts(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n as usize];
        for a in &self.members {
            for e in a.iter() {
                counts[(e - 1) as usize] += 1;
            }
        }
        counts
    }

    /// `γ_i = |F ∩ D_i| / C(n-1, k-1)` for every element `i`.
    pub fn star_densities(&self) -> Result<Vec<BigRational>> {
        if self.k == 0 {
            return Err(invalid("star densities need k >= 1"));
        }
        let den = BigInt::from(binom_signed(self.n as i64 - 1, self.k as i64 - 1));
        Ok(self
            .star_counts()
            .into_iter()
            .map(|c| BigRational::new(c.into(), den.clone()))
            .collect())
    }

    /// `F_J^I = {A \ J : A ∈ F, A ∩ J = I}` on the ground set `[n] \ J`,
    /// renumbered `1..=n-|J|` in increasing order.
    pub fn slice(&self, j: &SubsetCode, i: &SubsetCode) -> Result<Slice> {
        if !j.fits(self.n) {
            return Err(invalid(format!("J = {j} is not a subset of [{}]", self.n)));
        }
        if !i.is_subset(j) {
            return Err(invalid(format!("I = {i} is not a subset of J = {j}")));
        }
        if i.len() > self.k {
            return Err(invalid(format!("|I| = {} exceeds k = {}", i.len(), self.k)));
        }
        let labels: Vec<u32> = (1..=self.n).filter(|e| !j.contains(*e)).collect();
        let mut rename = vec![0u32; self.n as usize];
        for (new, &old) in labels.iter().enumerate() {
            rename[(old - 1) as usize] = new as u32 + 1;
        }
        let members: Vec<SubsetCode> = self
            .members
            .iter()
            .filter(|a| a.intersection(j) == *i)
            .map(|a| a.difference(j).relabel(&rename))
            .collect();
        // renaming is monotone, so colex order survives
        let family = Family::new(self.n - j.len(), self.k - i.len(), members)?;
        Ok(Slice { family, labels })
    }

    /// Number of pairs `(A, B) ∈ F1 × F2` with `A ∩ B = ∅`.
    pub fn bipartite_edge_count(f1: &Family, f2: &Family) -> Result<u64> {
        if f1.n != f2.n {
            return Err(Error::GroundSetMismatch(f1.n, f2.n));
        }
        if f1.k + f2.k > f1.n {
            return Err(invalid(format!(
                "member sizes {} + {} exceed the ground set [{}]",
                f1.k, f2.k, f1.n
            )));
        }
        Ok(f1
            .members
            .iter()
            .map(|a| f2.members.iter().filter(|b| a.is_disjoint(b)).count() as u64)
            .sum())
    }
}

// k > n is allowed; such a family is necessarily empty (slices produce them)
fn check_ground(n: u32) -> Result<()> {
    if n > MAX_N {
        return Err(Error::TooLarge(format!("ground set [{n}] exceeds [{MAX_N}]")));
    }
    Ok(())
}

impl<'a> IntoIterator for &'a Family {
    type Item = &'a SubsetCode;
    type IntoIter = std::slice::Iter<'a, SubsetCode>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}
