//! Optimal representations of the four clique families.

mod epsilon;
mod families;
mod k4;
mod triples;

use thiserror::Error;

pub use epsilon::{pair_sums, select_epsilon};
pub use families::{construct, construct_knx3, construct_knx4, construct_nk3, construct_nk4};
pub use k4::{ab_assignment, ab_eps_assignment, check_gap_intervals, k4_ranks, PairedValues, Quad, QuadKind};
pub use triples::{triple_assignment, triple_ranks, TripleAssignment};

use crate::exactnum::ExactError;
use crate::formulas::FormulaError;
use crate::graphs::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{n} groups requested but only {capacity} fit")]
    Capacity { n: usize, capacity: usize },
    #[error("matched pairs do not share one total")]
    Pairing,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("no scale factor satisfied the bounds on the {0}")]
    Scaling(&'static str),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
