use super::ColoringError;
use crate::graphs::{GraphSpec, Representation};

/// Color of every vertex pair: the index of the threshold interval holding its
/// rank sum, counted separately for edges and nonedges.
///
/// An edge with `c` thresholds at or below its sum (`c` odd) has color
/// `(c + 1) / 2`; a nonedge (`c` even) has color `c / 2 + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorTable {
    vertex_count: usize,
    threshold_count: usize,
    edge: Vec<bool>,
    color: Vec<u32>,
}

fn pair_index(n: usize, u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

impl ColorTable {
    pub fn from_representation(rep: &Representation, g: &GraphSpec) -> Result<Self, ColoringError> {
        let n = g.vertex_count();
        if rep.vertex_count() != n {
            return Err(ColoringError::VertexCount {
                graph: n,
                ranks: rep.vertex_count(),
            });
        }
        let ranks = rep.ranks();
        let adj = g.to_explicit();
        let mut edge = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        let mut color = Vec::with_capacity(edge.capacity());
        for u in 0..n {
            for v in u + 1..n {
                let c = rep.position(&(&ranks[u] + &ranks[v]));
                let is_edge = adj.is_adjacent(u, v);
                edge.push(is_edge);
                color.push(if is_edge { (c as u32).div_ceil(2) } else { c as u32 / 2 + 1 });
            }
        }
        Ok(ColorTable {
            vertex_count: n,
            threshold_count: rep.threshold_count(),
            edge,
            color,
        })
    }

    /// A table with prescribed colors, for exercising the certifiers on
    /// colorings no representation produces.
    pub fn from_colors(
        g: &GraphSpec,
        threshold_count: usize,
        mut color_of: impl FnMut(usize, usize, bool) -> u32,
    ) -> Result<Self, ColoringError> {
        let n = g.vertex_count();
        let adj = g.to_explicit();
        let edge_colors = threshold_count.div_ceil(2) as u32;
        let nonedge_colors = (threshold_count + 1).div_ceil(2) as u32;
        let mut edge = Vec::new();
        let mut color = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let is_edge = adj.is_adjacent(u, v);
                let c = color_of(u, v, is_edge);
                let limit = if is_edge { edge_colors } else { nonedge_colors };
                if c == 0 || c > limit {
                    return Err(ColoringError::ColorRange { u, v, color: c, limit });
                }
                edge.push(is_edge);
                color.push(c);
            }
        }
        Ok(ColorTable {
            vertex_count: n,
            threshold_count,
            edge,
            color,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn threshold_count(&self) -> usize {
        self.threshold_count
    }

    pub fn num_edge_colors(&self) -> u32 {
        self.threshold_count.div_ceil(2) as u32
    }

    pub fn num_nonedge_colors(&self) -> u32 {
        (self.threshold_count + 1).div_ceil(2) as u32
    }

    pub fn color(&self, u: usize, v: usize) -> u32 {
        assert!(u != v, "no color on the diagonal");
        self.color[pair_index(self.vertex_count, u, v)]
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge[pair_index(self.vertex_count, u, v)]
    }

    /// Sorted colors of all pairs inside `vertices`, which must be all edges
    /// or all nonedges.
    pub fn clique_color_multiset(&self, vertices: &[usize]) -> Result<Vec<u32>, ColoringError> {
        let mut colors = Vec::new();
        let mut kind = None;
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                let e = self.is_edge(u, v);
                if *kind.get_or_insert(e) != e {
                    return Err(ColoringError::NotHomogeneous);
                }
                colors.push(self.color(u, v));
            }
        }
        colors.sort_unstable();
        Ok(colors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn rep(ranks: &[i64], thresholds: &[i64]) -> Representation {
        let q = |v: &[i64]| v.iter().map(|&x| Rational::from_integer(x.into())).collect::<Vec<_>>();
        Representation::from_rationals(&q(ranks), &q(thresholds)).unwrap()
    }

    #[test]
    fn interval_examples() {
        let k2 = GraphSpec::disjoint_cliques(1, 2).unwrap();
        assert_eq!(ColorTable::from_representation(&rep(&[2, 3], &[0, 10]), &k2).unwrap().color(0, 1), 1);
        assert_eq!(ColorTable::from_representation(&rep(&[12, 13], &[0, 10, 20]), &k2).unwrap().color(0, 1), 2);
        let e2 = GraphSpec::disjoint_cliques(2, 1).unwrap();
        let t = ColorTable::from_representation(&rep(&[-1, -2], &[0, 10]), &e2).unwrap();
        assert_eq!(t.color(1, 0), 1);
        assert_eq!((t.num_edge_colors(), t.num_nonedge_colors()), (1, 2));
    }

    #[test]
    fn multisets() {
        let k3 = GraphSpec::disjoint_cliques(1, 3).unwrap();
        let t = ColorTable::from_representation(&rep(&[2, 4, 6], &[5, 7, 8, 11]), &k3).unwrap();
        assert_eq!(t.clique_color_multiset(&[0, 1, 2]).unwrap(), [1, 2, 2]);
        let t = ColorTable::from_representation(&rep(&[3, 3, 3, 3], &[5, 7, 8, 11]), &GraphSpec::disjoint_cliques(1, 4).unwrap()).unwrap();
        assert_eq!(t.clique_color_multiset(&[0, 1, 2, 3]).unwrap(), [1; 6]);
        let t = ColorTable::from_colors(&k3, 5, |u, v, _| if (u, v) == (0, 1) { 1 } else { 2 }).unwrap();
        assert_eq!(t.clique_color_multiset(&[0, 1, 2]).unwrap(), [1, 2, 2]);
        let p = GraphSpec::explicit(3, &[(0, 1)]).unwrap();
        let t = ColorTable::from_colors(&p, 3, |_, _, _| 1).unwrap();
        assert!(matches!(t.clique_color_multiset(&[0, 1, 2]), Err(ColoringError::NotHomogeneous)));
    }

    #[test]
    fn injected_colors_are_range_checked() {
        let k3 = GraphSpec::disjoint_cliques(1, 3).unwrap();
        assert!(ColorTable::from_colors(&k3, 3, |_, _, _| 3).is_err());
        assert!(ColorTable::from_colors(&k3, 3, |_, _, _| 0).is_err());
    }

    #[test]
    fn pair_index_is_dense() {
        let n = 7;
        let mut seen = vec![false; n * (n - 1) / 2];
        for u in 0..n {
            for v in u + 1..n {
                seen[pair_index(n, u, v)] = true;
                assert_eq!(pair_index(n, u, v), pair_index(n, v, u));
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }
}
