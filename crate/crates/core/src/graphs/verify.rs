use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{GraphError, GraphSpec, Representation};
use crate::exactnum::FieldElement;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub u: usize,
    pub v: usize,
    pub expected_edge: bool,
    pub got_edge: bool,
    pub rank_sum: FieldElement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub ok: bool,
    pub mismatches: Vec<Mismatch>,
}

fn check_cover(rep: &Representation, g: &GraphSpec) -> Result<(), GraphError> {
    if rep.vertex_count() != g.vertex_count() {
        return Err(GraphError::VertexCountMismatch {
            graph: g.vertex_count(),
            ranks: rep.vertex_count(),
        });
    }
    Ok(())
}

/// Lists every pair whose edge status under `rep` disagrees with `g`.
pub fn verify(rep: &Representation, g: &GraphSpec) -> Result<VerificationReport, GraphError> {
    check_cover(rep, g)?;
    let adj = g.to_explicit();
    let n = rep.vertex_count();
    let ranks = rep.ranks();
    let mismatches: Vec<Mismatch> = (0..n)
        .into_par_iter()
        .flat_map_iter(|u| {
            let adj = &adj;
            (u + 1..n).filter_map(move |v| {
                let sum = &ranks[u] + &ranks[v];
                let got_edge = rep.position(&sum) % 2 == 1;
                let expected_edge = adj.is_adjacent(u, v);
                (got_edge != expected_edge).then_some(Mismatch {
                    u,
                    v,
                    expected_edge,
                    got_edge,
                    rank_sum: sum,
                })
            })
        })
        .collect();
    Ok(VerificationReport {
        ok: mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankSums {
    pub edge: Vec<FieldElement>,
    pub nonedge: Vec<FieldElement>,
}

/// All pair sums split by adjacency in `g`, pairs in lexicographic order.
pub fn rank_sums(rep: &Representation, g: &GraphSpec) -> Result<RankSums, GraphError> {
    check_cover(rep, g)?;
    let adj = g.to_explicit();
    let ranks = rep.ranks();
    let n = ranks.len();
    let mut sums = RankSums {
        edge: Vec::new(),
        nonedge: Vec::new(),
    };
    for u in 0..n {
        for v in u + 1..n {
            let s = &ranks[u] + &ranks[v];
            if adj.is_adjacent(u, v) {
                sums.edge.push(s);
            } else {
                sums.nonedge.push(s);
            }
        }
    }
    Ok(sums)
}

/// True iff no value is both an edge sum and a nonedge sum.
pub fn check_sum_disjointness(rep: &Representation, g: &GraphSpec) -> Result<bool, GraphError> {
    let sums = rank_sums(rep, g)?;
    let edge: HashSet<&FieldElement> = sums.edge.iter().collect();
    Ok(!sums.nonedge.iter().any(|s| edge.contains(s)))
}
