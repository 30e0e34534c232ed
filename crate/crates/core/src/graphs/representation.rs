use std::cmp::Ordering;
use std::sync::Arc;

use super::GraphError;
use crate::exactnum::{Basis, FieldElement, Rational};

/// Vertex ranks and a strictly increasing threshold sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    basis: Arc<Basis>,
    ranks: Vec<FieldElement>,
    thresholds: Vec<FieldElement>,
}

impl Representation {
    pub fn new(
        basis: Arc<Basis>,
        ranks: Vec<FieldElement>,
        thresholds: Vec<FieldElement>,
    ) -> Result<Self, GraphError> {
        if ranks.iter().chain(&thresholds).any(|x| x.basis() != &basis) {
            return Err(GraphError::BasisMismatch);
        }
        if let Some(i) = thresholds.windows(2).position(|w| w[0] >= w[1]) {
            return Err(GraphError::ThresholdsNotIncreasing(i));
        }
        Ok(Representation {
            basis,
            ranks,
            thresholds,
        })
    }

    /// Representation with rational ranks and thresholds.
    pub fn from_rationals(ranks: &[Rational], thresholds: &[Rational]) -> Result<Self, GraphError> {
        let basis = Arc::new(Basis::rational());
        let lift = |q: &Rational| FieldElement::from_rational(&basis, q.clone()).expect("unit basis");
        let ranks = ranks.iter().map(lift).collect();
        let thresholds = thresholds.iter().map(lift).collect();
        Representation::new(basis, ranks, thresholds)
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn ranks(&self) -> &[FieldElement] {
        &self.ranks
    }

    pub fn thresholds(&self) -> &[FieldElement] {
        &self.thresholds
    }

    pub fn vertex_count(&self) -> usize {
        self.ranks.len()
    }

    pub fn threshold_count(&self) -> usize {
        self.thresholds.len()
    }

    fn rank(&self, v: usize) -> Result<&FieldElement, GraphError> {
        self.ranks.get(v).ok_or(GraphError::VertexOutOfRange {
            vertex: v,
            count: self.ranks.len(),
        })
    }

    pub fn rank_sum(&self, u: usize, v: usize) -> Result<FieldElement, GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.rank(u)? + self.rank(v)?)
    }

    /// Number of thresholds not exceeding `x`.
    pub fn position(&self, x: &FieldElement) -> usize {
        self.thresholds.partition_point(|t| t <= x)
    }

    pub fn is_edge_under(&self, u: usize, v: usize) -> Result<bool, GraphError> {
        Ok(self.position(&self.rank_sum(u, v)?) % 2 == 1)
    }

    /// Edge test phrased through the intervals `[θ_{2i-1}, θ_{2i})`.
    pub fn is_edge_by_interval(&self, u: usize, v: usize) -> Result<bool, GraphError> {
        let sum = self.rank_sum(u, v)?;
        let k = self.thresholds.len();
        Ok((0..k).step_by(2).any(|i| {
            self.thresholds[i] <= sum && (i + 1 == k || sum.cmp(&self.thresholds[i + 1]) == Ordering::Less)
        }))
    }

    /// Representation of the subgraph induced by `vertices`, in that order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<Representation, GraphError> {
        let ranks = vertices
            .iter()
            .map(|&v| self.rank(v).cloned())
            .collect::<Result<_, _>>()?;
        Representation::new(self.basis.clone(), ranks, self.thresholds.clone())
    }

    /// Adds `c` to every rank and `2c` to every threshold.
    pub fn shift(&self, c: &FieldElement) -> Result<Representation, GraphError> {
        if c.basis() != &self.basis {
            return Err(GraphError::BasisMismatch);
        }
        let twice = c + c;
        Representation::new(
            self.basis.clone(),
            self.ranks.iter().map(|r| r + c).collect(),
            self.thresholds.iter().map(|t| t + &twice).collect(),
        )
    }
}
