//! Exact and heuristic minimisers of the induced maximum degree or edge
//! count, the greedy matching procedure, and finite reports on the
//! conjectured shape of minimisers.

mod canon;
mod conjecture;
mod exact;
mod local;
mod matching;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{invalid, Error, Result};
use crate::family::{DegreeStrategy, Family};

pub use canon::is_canonical;
pub use conjecture::{conjecture_reports, ConjectureReport, ASYMPTOTIC_CAVEAT, DenseReport, SparseReport, StarUnionReport, Verdict};
pub use exact::{
    enumerate_optimal, exact_minimize, exact_minimize_with, exhaustive_minimize, SearchMode, SearchOptions,
    BRANCH_AND_BOUND_MAX_VERTICES, EXHAUSTIVE_MAX_SUBSETS,
};
pub use local::{local_search, LOCAL_SEARCH_MAX_VERTICES};
pub use matching::{greedy_matching, maximum_matching, MatchingResult, BRUTE_FORCE_MAX_MEMBERS};

/// Quantity being minimised over families of a fixed size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    MaxDegree,
    EdgeCount,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::MaxDegree => "max_degree",
            Objective::EdgeCount => "edge_count",
        }
    }

    /// The objective measured from scratch.
    pub fn measure(self, family: &Family) -> Result<u64> {
        let profile = family.degree_profile(DegreeStrategy::Auto)?;
        Ok(match self {
            Objective::MaxDegree => profile.max_degree,
            Objective::EdgeCount => profile.edge_count,
        })
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max_degree" | "max-degree" | "degree" => Ok(Objective::MaxDegree),
            "edge_count" | "edge-count" | "edges" => Ok(Objective::EdgeCount),
            _ => Err(invalid(format!("unknown objective {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub objective: Objective,
    pub optimum: u64,
    pub witness: Family,
    pub nodes_explored: u64,
    pub proven_optimal: bool,
}

impl SearchResult {
    /// Re-measures the witness and fails if it does not achieve the optimum.
    pub(crate) fn verified(self) -> Result<Self> {
        let measured = self.objective.measure(&self.witness)?;
        if measured != self.optimum {
            return Err(Error::Invariant(format!(
                "witness measures {} = {measured}, search reported {}",
                self.objective, self.optimum
            )));
        }
        Ok(self)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "objective": self.objective.as_str(),
            "n": self.witness.n(),
            "k": self.witness.k(),
            "m": self.witness.len(),
            "optimum": self.optimum,
            "proven_optimal": self.proven_optimal,
            "nodes_explored": self.nodes_explored,
            "witness": self.witness.iter().map(|a| a.elements()).collect::<Vec<_>>(),
        })
    }
}
