//! Graph families, multithreshold representations and their verification.

mod complement;
mod format;
mod representation;
mod spec;
mod verify;

use thiserror::Error;

pub use complement::complement_representation;
pub use format::{parse_representation, FormatError, RepresentationFile, SumsFile, FORMAT_VERSION};
pub use representation::Representation;
pub use spec::{ExplicitGraph, GraphSpec, MAX_VERTICES};
pub use verify::{check_sum_disjointness, rank_sums, verify, Mismatch, RankSums, VerificationReport};

use crate::exactnum::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("graphs are limited to {0} vertices")]
    TooLarge(usize),
    #[error("part of size zero")]
    EmptyPart,
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("graph has {graph} vertices but {ranks} ranks were given")]
    VertexCountMismatch { graph: usize, ranks: usize },
    #[error("thresholds are not strictly increasing at position {0}")]
    ThresholdsNotIncreasing(usize),
    #[error("ranks and thresholds must share one basis")]
    BasisMismatch,
    #[error("operation needs a family graph")]
    NotFamily,
    #[error("unrecognized graph description: {0}")]
    Shorthand(String),
    #[error("representation fails verification at {0} pairs")]
    NotVerified(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
