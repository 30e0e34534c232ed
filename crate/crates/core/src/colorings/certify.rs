use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{ColorTable, ColoringError};
use crate::graphs::GraphSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    SameColorPair,
    IjjIllPair,
    ExtremeColorMultiplicity,
    MissingHalfTriangle,
}

/// A triangle inside group `group` and its sorted colors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ColoredTriangle {
    pub group: usize,
    pub vertices: [usize; 3],
    pub colors: [u32; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CertificateViolation {
    pub kind: ViolationKind,
    /// Offending groups (cliques or parts), ascending.
    pub groups: Vec<usize>,
    pub triangles: Vec<ColoredTriangle>,
    /// The color in question, for the extreme-color check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<u32>,
}

/// Which extreme color is required to stay inside one group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtremeColor {
    /// Edge color `m` of a disjoint union of cliques with `2m - 1` thresholds.
    TopEdge,
    /// Nonedge color 1 of a complete multipartite graph.
    FirstNonedge,
    /// Nonedge color `m + 1` of a complete multipartite graph with `2m` thresholds.
    TopNonedge,
}

struct Groups {
    groups: Vec<Vec<usize>>,
    multipartite: bool,
}

fn family_groups(g: &GraphSpec) -> Result<Groups, ColoringError> {
    let ranges = g.groups().ok_or(ColoringError::WrongFamily)?;
    let size = ranges[0].len();
    if !(size == 3 || size == 4) || ranges.iter().any(|r| r.len() != size) {
        return Err(ColoringError::WrongFamily);
    }
    Ok(Groups {
        groups: ranges.into_iter().map(|r| r.collect()).collect(),
        multipartite: matches!(g, GraphSpec::CompleteMultipartite { .. }),
    })
}

fn check_table(table: &ColorTable, g: &GraphSpec) -> Result<(), ColoringError> {
    if table.vertex_count() != g.vertex_count() {
        return Err(ColoringError::VertexCount {
            graph: g.vertex_count(),
            ranks: table.vertex_count(),
        });
    }
    Ok(())
}

fn triangles(table: &ColorTable, g: &GraphSpec) -> Result<Vec<ColoredTriangle>, ColoringError> {
    check_table(table, g)?;
    let groups = family_groups(g)?;
    let mut out = Vec::new();
    for (gi, members) in groups.groups.iter().enumerate() {
        let s = members.len();
        for a in 0..s {
            for b in a + 1..s {
                for c in b + 1..s {
                    let vertices = [members[a], members[b], members[c]];
                    let colors = table.clique_color_multiset(&vertices)?;
                    out.push(ColoredTriangle {
                        group: gi,
                        vertices,
                        colors: [colors[0], colors[1], colors[2]],
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Reports every pair of groups holding triangles keyed alike, using the
/// first such triangle of each group.
fn pairs_sharing_key<K: Ord>(
    kind: ViolationKind,
    tris: Vec<ColoredTriangle>,
    key: impl Fn(&ColoredTriangle) -> Option<K>,
) -> Vec<CertificateViolation> {
    let mut buckets: BTreeMap<K, BTreeMap<usize, ColoredTriangle>> = BTreeMap::new();
    for t in tris {
        if let Some(k) = key(&t) {
            buckets.entry(k).or_default().entry(t.group).or_insert(t);
        }
    }
    let mut out = BTreeSet::new();
    for by_group in buckets.values() {
        let entries: Vec<&ColoredTriangle> = by_group.values().collect();
        for (i, x) in entries.iter().enumerate() {
            for y in &entries[i + 1..] {
                out.insert(CertificateViolation {
                    kind,
                    groups: vec![x.group, y.group],
                    triangles: vec![(*x).clone(), (*y).clone()],
                    color: None,
                });
            }
        }
    }
    out.into_iter().collect()
}

/// Two triangles from different groups never share a color multiset.
pub fn check_no_two_same_color(table: &ColorTable, g: &GraphSpec) -> Result<Vec<CertificateViolation>, ColoringError> {
    let tris = triangles(table, g)?;
    Ok(pairs_sharing_key(ViolationKind::SameColorPair, tris, |t| Some(t.colors)))
}

/// The color that appears an odd number of times in a triangle with at most
/// two colors: `i` for `ijj`, including `iii`.
fn head(colors: &[u32; 3]) -> Option<u32> {
    let [a, b, c] = *colors;
    if a == b && b == c {
        Some(a)
    } else if a == b {
        Some(c)
    } else if b == c {
        Some(a)
    } else {
        None
    }
}

/// Triangles of shapes `ijj` and `iℓℓ` never occur in different groups.
pub fn check_ijj_exclusion(table: &ColorTable, g: &GraphSpec) -> Result<Vec<CertificateViolation>, ColoringError> {
    let tris = triangles(table, g)?;
    Ok(pairs_sharing_key(ViolationKind::IjjIllPair, tris, |t| head(&t.colors)))
}

pub fn check_extreme_color_unique(
    table: &ColorTable,
    g: &GraphSpec,
    variant: ExtremeColor,
) -> Result<Vec<CertificateViolation>, ColoringError> {
    check_table(table, g)?;
    let groups = family_groups(g)?;
    let k = table.threshold_count();
    let color = match variant {
        ExtremeColor::TopEdge if !groups.multipartite && k % 2 == 1 => (k as u32).div_ceil(2),
        ExtremeColor::FirstNonedge if groups.multipartite => 1,
        ExtremeColor::TopNonedge if groups.multipartite && k.is_multiple_of(2) => k as u32 / 2 + 1,
        ExtremeColor::TopEdge | ExtremeColor::FirstNonedge | ExtremeColor::TopNonedge => {
            return Err(ColoringError::Variant { variant, threshold_count: k });
        }
    };
    let holders: Vec<usize> = groups
        .groups
        .iter()
        .enumerate()
        .filter(|(_, members)| {
            members
                .iter()
                .enumerate()
                .any(|(i, &u)| members[i + 1..].iter().any(|&v| table.color(u, v) == color))
        })
        .map(|(gi, _)| gi)
        .collect();
    Ok(if holders.len() > 1 {
        vec![CertificateViolation {
            kind: ViolationKind::ExtremeColorMultiplicity,
            groups: holders,
            triangles: Vec::new(),
            color: Some(color),
        }]
    } else {
        Vec::new()
    })
}

/// In every group of four whose triangles all use three distinct colors, some
/// triangle has all colors in `1..=m/2` or all in `m/2+1..=m`.
pub fn check_k4_half_triangle(
    table: &ColorTable,
    g: &GraphSpec,
    m: u32,
) -> Result<Vec<CertificateViolation>, ColoringError> {
    let groups = family_groups(g)?;
    if groups.groups[0].len() != 4 {
        return Err(ColoringError::WrongFamily);
    }
    let half = m / 2;
    let tris = triangles(table, g)?;
    let mut out = Vec::new();
    for quad in tris.chunks(4) {
        let rainbow = quad.iter().all(|t| head(&t.colors).is_none());
        let split = quad
            .iter()
            .any(|t| t.colors.iter().all(|&c| c <= half) || t.colors.iter().all(|&c| c > half));
        if rainbow && !split {
            out.push(CertificateViolation {
                kind: ViolationKind::MissingHalfTriangle,
                groups: vec![quad[0].group],
                triangles: quad.to_vec(),
                color: None,
            });
        }
    }
    Ok(out)
}

/// Every check that applies to `g` with the table's threshold count, sorted.
pub fn certify_all(table: &ColorTable, g: &GraphSpec) -> Result<Vec<CertificateViolation>, ColoringError> {
    let groups = family_groups(g)?;
    let k = table.threshold_count();
    let mut out = check_no_two_same_color(table, g)?;
    out.extend(check_ijj_exclusion(table, g)?);
    let extremes: &[ExtremeColor] = match (groups.multipartite, k % 2) {
        (false, 1) => &[ExtremeColor::TopEdge],
        (false, _) => &[],
        (true, 0) => &[ExtremeColor::FirstNonedge, ExtremeColor::TopNonedge],
        (true, _) => &[ExtremeColor::FirstNonedge],
    };
    for &variant in extremes {
        out.extend(check_extreme_color_unique(table, g, variant)?);
    }
    if groups.groups[0].len() == 4 {
        let m = if groups.multipartite {
            table.num_nonedge_colors()
        } else {
            table.num_edge_colors()
        };
        out.extend(check_k4_half_triangle(table, g, m)?);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;
    use crate::graphs::{verify, Representation};

    fn table_with(g: &GraphSpec, k: usize, colors: &[[u32; 3]]) -> ColorTable {
        // colors[t] are the colors of pairs (0,1), (0,2), (1,2) inside group t;
        // pairs across groups get color 1.
        let groups = g.group_of().unwrap();
        ColorTable::from_colors(g, k, |u, v, _| {
            if groups[u] != groups[v] {
                return 1;
            }
            let t = groups[u];
            let (a, b) = (u - 3 * t, v - 3 * t);
            colors[t][a + b - 1]
        })
        .unwrap()
    }

    #[test]
    fn same_color_pair_from_invalid_representation() {
        // Both triangles have sums 1, 2, 3, each sum isolated in its own interval.
        let g = GraphSpec::disjoint_cliques(2, 3).unwrap();
        let half = |x: i64| Rational::new(x.into(), 2.into());
        let r = [half(0), half(2), half(4)];
        let ranks: Vec<Rational> = r.iter().chain(&r).cloned().collect();
        let th: Vec<Rational> = [2, 3, 4, 5, 6, 7].iter().map(|&x| half(x)).collect();
        let rep = Representation::from_rationals(&ranks, &th).unwrap();
        assert!(!verify(&rep, &g).unwrap().ok);
        let table = ColorTable::from_representation(&rep, &g).unwrap();
        let v = check_no_two_same_color(&table, &g).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::SameColorPair);
        assert_eq!(v[0].groups, [0, 1]);
        assert_eq!(v[0].triangles[0].colors, [1, 2, 3]);
    }

    #[test]
    fn ijj_shapes() {
        let g = GraphSpec::disjoint_cliques(2, 3).unwrap();
        let t = table_with(&g, 6, &[[1, 2, 2], [3, 1, 3]]);
        let v = check_ijj_exclusion(&t, &g).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::IjjIllPair);
        assert!(check_no_two_same_color(&t, &g).unwrap().is_empty());
        let t = table_with(&g, 6, &[[1, 2, 3], [1, 2, 2]]);
        assert!(check_ijj_exclusion(&t, &g).unwrap().is_empty());
        let t = table_with(&g, 6, &[[2, 2, 2], [3, 2, 3]]);
        assert_eq!(check_ijj_exclusion(&t, &g).unwrap().len(), 1);
    }

    #[test]
    fn single_group_is_clean() {
        let g = GraphSpec::disjoint_cliques(1, 3).unwrap();
        let t = table_with(&g, 5, &[[1, 1, 1]]);
        assert!(certify_all(&t, &g).unwrap().is_empty());
    }

    #[test]
    fn extreme_colors() {
        let g = GraphSpec::disjoint_cliques(2, 3).unwrap();
        let t = table_with(&g, 3, &[[2, 1, 1], [1, 2, 1]]);
        let v = check_extreme_color_unique(&t, &g, ExtremeColor::TopEdge).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].groups.clone(), v[0].color), (vec![0, 1], Some(2)));
        let even = table_with(&g, 4, &[[2, 1, 1], [1, 2, 1]]);
        assert!(check_extreme_color_unique(&even, &g, ExtremeColor::TopEdge).is_err());
        assert!(check_extreme_color_unique(&t, &g, ExtremeColor::FirstNonedge).is_err());
    }

    #[test]
    fn half_triangle_property() {
        // Colors inside the K4 on vertices 0..4, keyed by pair.
        let g = GraphSpec::disjoint_cliques(1, 4).unwrap();
        let bad = |u: usize, v: usize| match (u, v) {
            (0, 1) => 1,
            (0, 2) => 3,
            (1, 2) => 2,
            (0, 3) => 4,
            (1, 3) => 3,
            (2, 3) => 1,
            _ => unreachable!(),
        };
        let t = ColorTable::from_colors(&g, 8, |u, v, _| bad(u, v)).unwrap();
        let v = check_k4_half_triangle(&t, &g, 4).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].kind, ViolationKind::MissingHalfTriangle);
        let mono = ColorTable::from_colors(&g, 8, |_, _, _| 2).unwrap();
        assert!(check_k4_half_triangle(&mono, &g, 4).unwrap().is_empty());
    }

    #[test]
    fn wrong_family() {
        let g = GraphSpec::disjoint_cliques(2, 2).unwrap();
        let t = ColorTable::from_colors(&g, 3, |_, _, _| 1).unwrap();
        assert!(matches!(check_no_two_same_color(&t, &g), Err(ColoringError::WrongFamily)));
        let e = GraphSpec::explicit(3, &[]).unwrap();
        let t = ColorTable::from_colors(&e, 1, |_, _, _| 1).unwrap();
        assert!(matches!(check_ijj_exclusion(&t, &e), Err(ColoringError::WrongFamily)));
    }
}
