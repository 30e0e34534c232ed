use super::ConstructionError;
use crate::exactnum::FieldElement;
use crate::formulas::max_parts_bound;

/// Ranks of a triangle whose three edge sums are `a`, `b`, `c`.
///
/// The first two ranks sum to `a`, the first and last to `b`, the last two to `c`.
pub fn triple_ranks(a: &FieldElement, b: &FieldElement, c: &FieldElement) -> [FieldElement; 3] {
    [
        (&(a + b) - c).half(),
        (&(a + c) - b).half(),
        (&(b + c) - a).half(),
    ]
}

/// Triangles labelled by value indices: `[i, i, i]` or `[i, j, k]` with
/// `i < j < k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleAssignment {
    values: Vec<FieldElement>,
    triples: Vec<[usize; 3]>,
}

impl TripleAssignment {
    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn sums(&self, index: usize) -> [FieldElement; 3] {
        self.triples[index].map(|i| self.values[i].clone())
    }

    /// Ranks of all triangles, three consecutive vertices per triangle.
    pub fn ranks(&self) -> Vec<FieldElement> {
        (0..self.len())
            .flat_map(|t| {
                let [a, b, c] = self.sums(t);
                triple_ranks(&a, &b, &c)
            })
            .collect()
    }
}

/// Monochromatic triangles first, then 3-subsets in lexicographic order.
pub fn triple_assignment(n: usize, values: &[FieldElement]) -> Result<TripleAssignment, ConstructionError> {
    let m = values.len();
    let capacity = max_parts_bound(m as u64, 3).expect("size 3") as usize;
    if n > capacity {
        return Err(ConstructionError::Capacity { n, capacity });
    }
    let mono = (0..m).map(|i| [i, i, i]);
    let mixed = (0..m).flat_map(|i| (i + 1..m).flat_map(move |j| (j + 1..m).map(move |k| [i, j, k])));
    Ok(TripleAssignment {
        values: values.to_vec(),
        triples: mono.chain(mixed).take(n).collect(),
    })
}
