//! Exact decision procedure for small graphs: enumerate which threshold
//! interval each pair sum occupies and solve the resulting linear system.

mod enumerate;
mod lp;
mod simplex;

use thiserror::Error;

pub use enumerate::{
    is_k_threshold, threshold_number, OracleAnswer, OracleConfig, OracleReport, ThresholdNumber, DEFAULT_BUDGET,
};
pub use lp::{build_lp, lp_feasible, witness_representation, IntervalAssignment, LinearConstraint, LpProblem, LpWitness};
pub use simplex::{maximize, LpOutcome};

use crate::graphs::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search needs more than {budget} interval assignments")]
    BudgetExceeded { budget: u64 },
    #[error("malformed interval assignment: {0}")]
    Malformed(&'static str),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
