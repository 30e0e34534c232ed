use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GraphError;
use crate::formulas::Family;

/// Largest vertex count any graph may have.
pub const MAX_VERTICES: usize = 1 << 12;

fn check_size(n: Option<usize>) -> Result<(), GraphError> {
    match n {
        Some(0) => Err(GraphError::NoVertices),
        Some(n) if n <= MAX_VERTICES => Ok(()),
        _ => Err(GraphError::TooLarge(MAX_VERTICES)),
    }
}

/// Symmetric irreflexive adjacency stored as a bit matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExplicitGraph {
    vertex_count: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl ExplicitGraph {
    pub fn empty(vertex_count: usize) -> Self {
        let words_per_row = vertex_count.div_ceil(64);
        ExplicitGraph {
            vertex_count,
            words_per_row,
            bits: vec![0; words_per_row * vertex_count],
        }
    }

    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        check_size(Some(vertex_count))?;
        let mut g = ExplicitGraph::empty(vertex_count);
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(GraphError::VertexOutOfRange {
                    vertex: u.max(v),
                    count: vertex_count,
                });
            }
            g.set(u, v);
            g.set(v, u);
        }
        Ok(g)
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words_per_row + v / 64] |= 1 << (v % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words_per_row + v / 64] >> (v % 64) & 1 == 1
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count;
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.is_adjacent(u, v))
            .collect()
    }
}

/// A graph given either by family shape or by explicit adjacency.
///
/// Family vertices are numbered group-major: clique (or part) `i` of size `s`
/// owns the vertices `offset_i .. offset_i + s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub enum GraphSpec {
    DisjointCliques { count: usize, clique_size: usize },
    CompleteMultipartite { part_sizes: Vec<usize> },
    Explicit(ExplicitGraph),
}

impl GraphSpec {
    pub fn disjoint_cliques(count: usize, clique_size: usize) -> Result<Self, GraphError> {
        if count == 0 || clique_size == 0 {
            return Err(GraphError::NoVertices);
        }
        check_size(count.checked_mul(clique_size))?;
        Ok(GraphSpec::DisjointCliques { count, clique_size })
    }

    pub fn complete_multipartite(part_sizes: Vec<usize>) -> Result<Self, GraphError> {
        if part_sizes.is_empty() {
            return Err(GraphError::NoVertices);
        }
        if part_sizes.contains(&0) {
            return Err(GraphError::EmptyPart);
        }
        check_size(part_sizes.iter().try_fold(0usize, |acc, &s| acc.checked_add(s)))?;
        Ok(GraphSpec::CompleteMultipartite { part_sizes })
    }

    pub fn family(family: Family, n: usize) -> Result<Self, GraphError> {
        let size = family.clique_size();
        if family.is_multipartite() {
            GraphSpec::complete_multipartite(vec![size; n])
        } else {
            GraphSpec::disjoint_cliques(n, size)
        }
    }

    pub fn explicit(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        Ok(GraphSpec::Explicit(ExplicitGraph::from_edges(vertex_count, edges)?))
    }

    pub fn vertex_count(&self) -> usize {
        match self {
            GraphSpec::DisjointCliques { count, clique_size } => count * clique_size,
            GraphSpec::CompleteMultipartite { part_sizes } => part_sizes.iter().sum(),
            GraphSpec::Explicit(g) => g.vertex_count(),
        }
    }

    /// Vertex ranges of the cliques or parts; `None` for explicit graphs.
    pub fn groups(&self) -> Option<Vec<Range<usize>>> {
        let sizes = match self {
            GraphSpec::DisjointCliques { count, clique_size } => vec![*clique_size; *count],
            GraphSpec::CompleteMultipartite { part_sizes } => part_sizes.clone(),
            GraphSpec::Explicit(_) => return None,
        };
        let mut start = 0;
        Some(
            sizes
                .into_iter()
                .map(|s| {
                    start += s;
                    start - s..start
                })
                .collect(),
        )
    }

    /// Group index of every vertex; `None` for explicit graphs.
    pub fn group_of(&self) -> Option<Vec<usize>> {
        let groups = self.groups()?;
        let mut out = vec![0; self.vertex_count()];
        for (i, g) in groups.into_iter().enumerate() {
            out[g].fill(i);
        }
        Some(out)
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        match self {
            GraphSpec::DisjointCliques { clique_size, .. } => u / clique_size == v / clique_size,
            GraphSpec::CompleteMultipartite { part_sizes } => {
                let part = |x: usize| {
                    let mut end = 0;
                    part_sizes.iter().position(|s| {
                        end += s;
                        x < end
                    })
                };
                part(u) != part(v)
            }
            GraphSpec::Explicit(g) => g.is_adjacent(u, v),
        }
    }

    /// Adjacency as a dense bit matrix, convenient for repeated queries.
    pub fn to_explicit(&self) -> ExplicitGraph {
        match self {
            GraphSpec::Explicit(g) => g.clone(),
            _ => {
                let n = self.vertex_count();
                let mut g = ExplicitGraph::empty(n);
                let groups = self.group_of().expect("family graph");
                let same_adjacent = matches!(self, GraphSpec::DisjointCliques { .. });
                for u in 0..n {
                    for v in 0..n {
                        if u != v && (groups[u] == groups[v]) == same_adjacent {
                            g.set(u, v);
                        }
                    }
                }
                g
            }
        }
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.to_explicit().edges()
    }

    pub fn complement(&self) -> GraphSpec {
        match self {
            GraphSpec::DisjointCliques { count, clique_size } => GraphSpec::CompleteMultipartite {
                part_sizes: vec![*clique_size; *count],
            },
            GraphSpec::CompleteMultipartite { part_sizes }
                if part_sizes.iter().all(|&s| s == part_sizes[0]) =>
            {
                GraphSpec::DisjointCliques {
                    count: part_sizes.len(),
                    clique_size: part_sizes[0],
                }
            }
            _ => {
                let g = self.to_explicit();
                let n = g.vertex_count();
                let mut c = ExplicitGraph::empty(n);
                for u in 0..n {
                    for v in 0..n {
                        if u != v && !g.is_adjacent(u, v) {
                            c.set(u, v);
                        }
                    }
                }
                GraphSpec::Explicit(c)
            }
        }
    }

    /// The family shape kept by a subset of whole groups, in the given order.
    pub fn select_groups(&self, indices: &[usize]) -> Result<GraphSpec, GraphError> {
        let groups = self.groups().ok_or(GraphError::NotFamily)?;
        if let Some(&bad) = indices.iter().find(|&&i| i >= groups.len()) {
            return Err(GraphError::VertexOutOfRange {
                vertex: bad,
                count: groups.len(),
            });
        }
        match self {
            GraphSpec::DisjointCliques { clique_size, .. } => {
                GraphSpec::disjoint_cliques(indices.len(), *clique_size)
            }
            _ => GraphSpec::complete_multipartite(indices.iter().map(|&i| groups[i].len()).collect()),
        }
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<GraphSpec, GraphError> {
        let n = self.vertex_count();
        if let Some(&bad) = vertices.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { vertex: bad, count: n });
        }
        let g = self.to_explicit();
        let mut edges = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if u == v {
                    return Err(GraphError::SelfLoop(u));
                }
                if g.is_adjacent(u, v) {
                    edges.push((i, j));
                }
            }
        }
        GraphSpec::explicit(vertices.len(), &edges)
    }

    pub fn is_edgeless(&self) -> bool {
        match self {
            GraphSpec::DisjointCliques { clique_size, .. } => *clique_size == 1,
            GraphSpec::CompleteMultipartite { part_sizes } => part_sizes.len() == 1,
            GraphSpec::Explicit(g) => g.bits.iter().all(|&w| w == 0),
        }
    }

    pub fn is_complete(&self) -> bool {
        match self {
            GraphSpec::DisjointCliques { count, .. } => *count == 1,
            GraphSpec::CompleteMultipartite { part_sizes } => part_sizes.iter().all(|&s| s == 1),
            GraphSpec::Explicit(g) => {
                let n = g.vertex_count();
                g.edges().len() == n * (n - 1) / 2
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum GraphJson {
    DisjointCliques {
        count: usize,
        clique_size: usize,
    },
    CompleteMultipartite {
        part_sizes: Vec<usize>,
    },
    Explicit {
        vertex_count: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// Compact text form: `nk3:5` (any family name with a group count),
/// `cliques:3x4`, `multipartite:2,3,3`, or a JSON graph object.
impl FromStr for GraphSpec {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.starts_with('{') {
            return serde_json::from_str(s).map_err(|e| GraphError::Shorthand(e.to_string()));
        }
        let bad = || GraphError::Shorthand(s.to_string());
        let (head, tail) = s.split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match head.trim() {
            "cliques" => {
                let (count, size) = tail.split_once('x').ok_or_else(bad)?;
                GraphSpec::disjoint_cliques(num(count)?, num(size)?)
            }
            "multipartite" => GraphSpec::complete_multipartite(tail.split(',').map(num).collect::<Result<_, _>>()?),
            name => GraphSpec::family(name.parse::<Family>().map_err(|_| bad())?, num(tail)?),
        }
    }
}

impl TryFrom<GraphJson> for GraphSpec {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        match j {
            GraphJson::DisjointCliques { count, clique_size } => {
                GraphSpec::disjoint_cliques(count, clique_size)
            }
            GraphJson::CompleteMultipartite { part_sizes } => GraphSpec::complete_multipartite(part_sizes),
            GraphJson::Explicit { vertex_count, edges } => GraphSpec::explicit(vertex_count, &edges),
        }
    }
}

impl From<GraphSpec> for GraphJson {
    fn from(g: GraphSpec) -> Self {
        match g {
            GraphSpec::DisjointCliques { count, clique_size } => {
                GraphJson::DisjointCliques { count, clique_size }
            }
            GraphSpec::CompleteMultipartite { part_sizes } => GraphJson::CompleteMultipartite { part_sizes },
            GraphSpec::Explicit(g) => GraphJson::Explicit {
                vertex_count: g.vertex_count(),
                edges: g.edges(),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_adjacency() {
        let g = GraphSpec::family(Family::Nk3, 2).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert!(g.is_adjacent(0, 2) && !g.is_adjacent(2, 3) && g.is_adjacent(4, 5));
        let h = GraphSpec::family(Family::Knx4, 2).unwrap();
        assert!(!h.is_adjacent(0, 3) && h.is_adjacent(3, 4));
        assert_eq!(h.edges().len(), 16);
        assert_eq!(g.edges(), [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]);
    }

    #[test]
    fn complement_of_families() {
        let g = GraphSpec::family(Family::Nk4, 3).unwrap();
        assert_eq!(g.complement(), GraphSpec::family(Family::Knx4, 3).unwrap());
        assert_eq!(g.complement().complement(), g);
        let mixed = GraphSpec::complete_multipartite(vec![1, 2]).unwrap();
        assert_eq!(mixed.complement().edges(), [(1, 2)]);
        assert_eq!(mixed.complement().complement().edges(), mixed.edges());
    }

    #[test]
    fn explicit_validation() {
        assert!(GraphSpec::explicit(3, &[(0, 0)]).is_err());
        assert!(GraphSpec::explicit(3, &[(0, 3)]).is_err());
        assert!(GraphSpec::explicit(0, &[]).is_err());
        let g = GraphSpec::explicit(3, &[(2, 1), (1, 2)]).unwrap();
        assert_eq!(g.edges(), [(1, 2)]);
    }

    #[test]
    fn induced_and_selected_groups() {
        let g = GraphSpec::family(Family::Knx3, 3).unwrap();
        let sub = g.induced(&[0, 1, 3]).unwrap();
        assert_eq!(sub.edges(), [(0, 2), (1, 2)]);
        let sel = g.select_groups(&[0, 2]).unwrap();
        assert_eq!(sel, GraphSpec::family(Family::Knx3, 2).unwrap());
    }

    #[test]
    fn json_shapes() {
        let g = GraphSpec::family(Family::Nk3, 2).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"kind":"disjoint_cliques","count":2,"clique_size":3}"#);
        assert_eq!(serde_json::from_str::<GraphSpec>(&s).unwrap(), g);
        let e = GraphSpec::explicit(3, &[(0, 1)]).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"kind":"explicit","vertex_count":3,"edges":[[0,1]]}"#);
        assert_eq!(serde_json::from_str::<GraphSpec>(&s).unwrap(), e);
        for bad in [
            r#"{"kind":"disjoint_cliques","count":0,"clique_size":3}"#,
            r#"{"kind":"complete_multipartite","part_sizes":[2,0]}"#,
            r#"{"kind":"explicit","vertex_count":2,"edges":[[1,1]]}"#,
            r#"{"kind":"disjoint_cliques","count":1,"clique_size":3,"x":1}"#,
        ] {
            assert!(serde_json::from_str::<GraphSpec>(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn edgeless_and_complete() {
        assert!(GraphSpec::disjoint_cliques(3, 1).unwrap().is_edgeless());
        assert!(GraphSpec::explicit(3, &[]).unwrap().is_edgeless());
        assert!(GraphSpec::disjoint_cliques(1, 4).unwrap().is_complete());
        assert!(!GraphSpec::family(Family::Knx3, 2).unwrap().is_complete());
    }

    #[test]
    fn shorthand() {
        assert_eq!("nk3:2".parse::<GraphSpec>().unwrap(), GraphSpec::disjoint_cliques(2, 3).unwrap());
        assert_eq!(
            "knx4:3".parse::<GraphSpec>().unwrap(),
            GraphSpec::complete_multipartite(vec![4, 4, 4]).unwrap()
        );
        assert_eq!("cliques:2x2".parse::<GraphSpec>().unwrap(), GraphSpec::disjoint_cliques(2, 2).unwrap());
        assert_eq!(
            "multipartite:1, 2".parse::<GraphSpec>().unwrap(),
            GraphSpec::complete_multipartite(vec![1, 2]).unwrap()
        );
        let json = r#"{"kind":"explicit","vertex_count":3,"edges":[[0,1]]}"#;
        assert_eq!(json.parse::<GraphSpec>().unwrap(), GraphSpec::explicit(3, &[(0, 1)]).unwrap());
        for bad in ["nk3", "nk5:2", "nk3:x", "cliques:2", "multipartite:1,0", "nk3:0", "{"] {
            assert!(bad.parse::<GraphSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn size_limits() {
        assert_eq!(GraphSpec::disjoint_cliques(usize::MAX, 2), Err(GraphError::TooLarge(MAX_VERTICES)));
        assert_eq!(GraphSpec::complete_multipartite(vec![usize::MAX, 2]), Err(GraphError::TooLarge(MAX_VERTICES)));
        assert_eq!(GraphSpec::explicit(MAX_VERTICES + 1, &[]), Err(GraphError::TooLarge(MAX_VERTICES)));
        assert!(GraphSpec::disjoint_cliques(MAX_VERTICES / 4, 4).is_ok());
    }
}
