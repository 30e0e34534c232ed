//! Colorings of edges and nonedges by threshold interval, and checkers for
//! the combinatorial constraints every valid representation satisfies.

mod bounds;
mod certify;
mod table;

use thiserror::Error;

pub use bounds::max_groups_for_thresholds;
pub use certify::{
    certify_all, check_extreme_color_unique, check_ijj_exclusion, check_k4_half_triangle, check_no_two_same_color,
    CertificateViolation, ColoredTriangle, ExtremeColor, ViolationKind,
};
pub use table::ColorTable;
pub use crate::formulas::max_parts_bound;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("graph has {graph} vertices but the table or representation has {ranks}")]
    VertexCount { graph: usize, ranks: usize },
    #[error("pair ({u}, {v}) has color {color}, outside 1..={limit}")]
    ColorRange { u: usize, v: usize, color: u32, limit: u32 },
    #[error("vertex set mixes edges and nonedges")]
    NotHomogeneous,
    #[error("check needs nK3, nK4 or a complete multipartite graph with parts of size 3 or 4")]
    WrongFamily,
    #[error("{variant:?} does not apply with {threshold_count} thresholds on this family")]
    Variant { variant: ExtremeColor, threshold_count: usize },
}
