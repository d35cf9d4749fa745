//! Exact exponential solvers for the hard problems, 3-SAT reductions that
//! produce instances for them, and a small SAT enumerator.

pub mod cnf;
pub mod reductions;
pub mod search;

use thiserror::Error;

use crate::branching::BranchingError;
use crate::graph::GraphError;
use crate::kind::DistanceKind;
use crate::oracle::{OracleError, DEFAULT_PATH_CAP};

pub use cnf::{parse_dimacs, sat_brute, CnfError, CnfFormula, Literal};
pub use reductions::{
    gen_ftmw_instance, gen_ld_toss_instance, gen_mt_toss_instance, gen_st_toss_instance, Instance,
    Variant,
};
pub use search::{
    brute_max_dtib, brute_max_dtob, brute_min_dtiss, brute_min_dtoss, brute_min_dtoss_subsets,
    ea_toss, ld_tiss_poly, min_dtoss, verify_toss_witness, TossWitness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("size guard: {what} {actual} exceeds {limit}")]
pub struct GuardError {
    pub what: &'static str,
    pub limit: usize,
    pub actual: usize,
}

/// Size limits for the exponential searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    /// Vertices for the maximum branching search.
    pub tob_vertices: usize,
    /// Arcs for the walk-union spanning subgraph search.
    pub toss_arcs: usize,
    /// Arcs for the plain subset enumeration.
    pub subset_arcs: usize,
    pub sat_variables: usize,
    /// Walks enumerated before giving up.
    pub walk_cap: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            tob_vertices: 24,
            toss_arcs: 128,
            subset_arcs: 16,
            sat_variables: cnf::DEFAULT_MAX_SAT_VARIABLES,
            walk_cap: DEFAULT_PATH_CAP,
        }
    }
}

impl Guards {
    pub(crate) fn check(what: &'static str, limit: usize, actual: usize) -> Result<(), GuardError> {
        if actual > limit {
            Err(GuardError {
                what,
                limit,
                actual,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HardnessError {
    #[error(transparent)]
    Guard(#[from] GuardError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("walk enumeration exceeded the cap of {cap} walks")]
    WalkCap { cap: usize },
    #[error("{kind} is not supported here: {reason}")]
    Unsupported {
        kind: DistanceKind,
        reason: &'static str,
    },
}

impl From<OracleError> for HardnessError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Graph(g) => HardnessError::Graph(g),
            OracleError::Overflow { cap } => HardnessError::WalkCap { cap },
        }
    }
}

impl From<BranchingError> for HardnessError {
    fn from(e: BranchingError) -> Self {
        match e {
            BranchingError::Graph(g) => HardnessError::Graph(g),
            BranchingError::Unsupported { kind, reason } => {
                HardnessError::Unsupported { kind, reason }
            }
        }
    }
}
