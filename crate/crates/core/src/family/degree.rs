use rayon::prelude::*;

use super::Family;
use crate::combinat::SubsetCode;
use crate::error::{Error, Result};

/// Largest ground set for the sum-over-subsets strategy (a `2^n` table).
pub const ZETA_MAX_N: u32 = 28;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DegreeStrategy {
    #[default]
    Auto,
    Naive,
    Zeta,
}

/// Degrees of the subgraph of `K(n, k)` induced by a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    /// Degree of each member, in the family's colex order.
    pub degrees: Vec<u64>,
    pub max_degree: u64,
    pub edge_count: u64,
}

impl DegreeProfile {
    fn from_degrees(degrees: Vec<u64>) -> Self {
        let max_degree = degrees.iter().copied().max().unwrap_or(0);
        let edge_count = degrees.iter().sum::<u64>() / 2;
        DegreeProfile {
            degrees,
            max_degree,
            edge_count,
        }
    }
}

const PAR_THRESHOLD: usize = 2048;

impl Family {
    pub fn degree_profile(&self, strategy: DegreeStrategy) -> Result<DegreeProfile> {
        let use_zeta = match strategy {
            DegreeStrategy::Naive => false,
            DegreeStrategy::Zeta => {
                if self.n > ZETA_MAX_N {
                    return Err(Error::TooLarge(format!(
                        "zeta strategy needs n <= {ZETA_MAX_N}, got {}",
                        self.n
                    )));
                }
                true
            }
            DegreeStrategy::Auto => self.n <= 24 && self.len() > (1usize << self.n) / self.n.max(1) as usize,
        };
        let degrees = if use_zeta { self.degrees_zeta() } else { self.degrees_naive() };
        Ok(DegreeProfile::from_degrees(degrees))
    }

    /// Number of members disjoint from an arbitrary set.
    pub fn degree_of(&self, set: &SubsetCode) -> u64 {
        self.members.iter().filter(|b| b.is_disjoint(set)).count() as u64
    }

    pub fn max_degree(&self) -> u64 {
        self.degree_profile(DegreeStrategy::Auto)
            .map(|p| p.max_degree)
            .unwrap_or_else(|_| unreachable!("auto never fails"))
    }

    pub fn edge_count(&self) -> u64 {
        self.degree_profile(DegreeStrategy::Auto)
            .map(|p| p.edge_count)
            .unwrap_or_else(|_| unreachable!("auto never fails"))
    }

    fn degrees_naive(&self) -> Vec<u64> {
        if self.n <= 64 {
            let words: Vec<u64> = self.members.iter().map(|a| a.low_word()).collect();
            let count = |&a: &u64| words.iter().filter(|&&b| a & b == 0).count() as u64;
            if words.len() >= PAR_THRESHOLD {
                words.par_iter().map(count).collect()
            } else {
                words.iter().map(count).collect()
            }
        } else if self.len() >= PAR_THRESHOLD {
            self.members.par_iter().map(|a| self.degree_of(a)).collect()
        } else {
            self.members.iter().map(|a| self.degree_of(a)).collect()
        }
    }

    fn degrees_zeta(&self) -> Vec<u64> {
        let n = self.n;
        let full = (1u64 << n) - 1;
        // h[mask] = number of members contained in mask
        let mut h = vec![0u32; 1usize << n];
        for a in &self.members {
            h[a.low_word() as usize] += 1;
        }
        for bit in 0..n {
            let step = 1usize << bit;
            h.par_chunks_mut(step << 1).for_each(|chunk| {
                let (lo, hi) = chunk.split_at_mut(step);
                for (x, y) in hi.iter_mut().zip(lo.iter()) {
                    *x += *y;
                }
            });
        }
        self.members
            .iter()
            .map(|a| h[(full & !a.low_word()) as usize] as u64)
            .collect()
    }
}
