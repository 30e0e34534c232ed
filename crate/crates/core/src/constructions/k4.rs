use num_traits::Signed;

use super::ConstructionError;
use crate::exactnum::{FieldElement, Rational};

/// Four ranks `(w, x, y, z)` whose pairwise sums realize
/// `K4(a1, b1, a2, b2, a3, b3)`.
///
/// Pairing: `wx = a1`, `wy = a2`, `wz = a3`, `yz = b1`, `xz = b2`, `xy = b3`.
pub fn k4_ranks(sums: &[FieldElement; 6]) -> Result<[FieldElement; 4], ConstructionError> {
    let [a1, b1, a2, b2, a3, b3] = sums;
    let n = a1 + b1;
    if a2 + b2 != n || a3 + b3 != n {
        return Err(ConstructionError::Pairing);
    }
    Ok([
        (&(a1 + a2) - b3).half(),
        (&(b2 + b3) - b1).half(),
        (&(b1 + b3) - b2).half(),
        (&(b1 + b2) - b3).half(),
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    /// `K4(a_i)` or `K4(b_i)`.
    I,
    /// `K4(a_i, b_i, a_j, b_j, a_k, b_k)` or its variant with the last pair swapped.
    II,
    /// `K4(N/2 + ε)`.
    III,
    /// `K4(a_i + ε, b_i + ε, a_j + ε, b_j + ε, N/2 + ε, N/2 + ε)`.
    IV,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quad {
    pub kind: QuadKind,
    pub sums: [FieldElement; 6],
}

impl Quad {
    pub fn uniform(kind: QuadKind, c: &FieldElement) -> Quad {
        Quad {
            kind,
            sums: std::array::from_fn(|_| c.clone()),
        }
    }

    pub fn ranks(&self) -> [FieldElement; 4] {
        k4_ranks(&self.sums).expect("quads are built with matched pairs")
    }
}

/// Values `a_1 .. a_M` with partners `b_i = N - a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairedValues {
    a: Vec<FieldElement>,
    b: Vec<FieldElement>,
    n: FieldElement,
}

impl PairedValues {
    pub fn new(a: Vec<FieldElement>, n: FieldElement) -> Self {
        let b = a.iter().map(|x| &n - x).collect();
        PairedValues { a, b, n }
    }

    pub fn from_pairs(a: Vec<FieldElement>, b: Vec<FieldElement>) -> Result<Self, ConstructionError> {
        if a.len() != b.len() || a.is_empty() {
            return Err(ConstructionError::Pairing);
        }
        let n = &a[0] + &b[0];
        if a.iter().zip(&b).any(|(x, y)| x + y != n) {
            return Err(ConstructionError::Pairing);
        }
        Ok(PairedValues { a, b, n })
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn b(&self) -> &[FieldElement] {
        &self.b
    }

    pub fn n(&self) -> &FieldElement {
        &self.n
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// `N/2 + ε`.
    pub fn center(&self, eps: &Rational) -> FieldElement {
        self.n.half().add_rational(eps)
    }
}

fn triples(m: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..m).flat_map(move |i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| (i, j, k))))
}

/// Type I quads for every `a_i` then every `b_i`, then two type II quads per
/// 3-subset.
pub fn ab_assignment(p: &PairedValues) -> Vec<Quad> {
    let mut quads: Vec<Quad> = p.a.iter().map(|x| Quad::uniform(QuadKind::I, x)).collect();
    quads.extend(p.b.iter().map(|x| Quad::uniform(QuadKind::I, x)));
    let (a, b) = (&p.a, &p.b);
    for (i, j, k) in triples(p.len()) {
        for last in [[&a[k], &b[k]], [&b[k], &a[k]]] {
            quads.push(Quad {
                kind: QuadKind::II,
                sums: [
                    a[i].clone(),
                    b[i].clone(),
                    a[j].clone(),
                    b[j].clone(),
                    last[0].clone(),
                    last[1].clone(),
                ],
            });
        }
    }
    quads
}

/// The (A, B) quads plus one type III quad and a type IV quad per 2-subset.
/// `eps = 0` gives the unperturbed configuration.
pub fn ab_eps_assignment(p: &PairedValues, eps: &Rational) -> Result<Vec<Quad>, ConstructionError> {
    if eps.is_negative() {
        return Err(ConstructionError::NonPositiveEpsilon);
    }
    let mut quads = ab_assignment(p);
    let center = p.center(eps);
    quads.push(Quad::uniform(QuadKind::III, &center));
    let m = p.len();
    for i in 0..m {
        for j in i + 1..m {
            quads.push(Quad {
                kind: QuadKind::IV,
                sums: [
                    p.a[i].add_rational(eps),
                    p.b[i].add_rational(eps),
                    p.a[j].add_rational(eps),
                    p.b[j].add_rational(eps),
                    center.clone(),
                    center.clone(),
                ],
            });
        }
    }
    Ok(quads)
}

/// True iff the windows `[a_i, a_i + ε]`, `[b_i, b_i + ε]` and the point
/// `N/2 + ε` are pairwise disjoint and none holds a value of `foreign`.
pub fn check_gap_intervals(p: &PairedValues, eps: &Rational, foreign: &[FieldElement]) -> bool {
    let mut windows: Vec<(FieldElement, FieldElement)> = p
        .a
        .iter()
        .chain(&p.b)
        .map(|x| (x.clone(), x.add_rational(eps)))
        .collect();
    let c = p.center(eps);
    windows.push((c.clone(), c));
    windows.sort();
    if windows.windows(2).any(|w| w[0].1 >= w[1].0) {
        return false;
    }
    !foreign
        .iter()
        .any(|s| windows.iter().any(|(lo, hi)| lo <= s && s <= hi))
}
