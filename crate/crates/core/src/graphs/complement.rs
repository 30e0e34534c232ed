use super::{verify, GraphError, GraphSpec, Representation};
use crate::exactnum::{min_positive_gap, FieldElement, GapBound, Rational};
use num_traits::One;

/// Representation of the complement of `g` with at most one more threshold
/// than the next odd count.
///
/// Thresholds are first nudged left so that no rank sum sits on one, padded
/// to an odd count with a threshold above every sum, and then everything is
/// negated and the thresholds reversed.
pub fn complement_representation(rep: &Representation, g: &GraphSpec) -> Result<Representation, GraphError> {
    let report = verify(rep, g)?;
    if !report.ok {
        return Err(GraphError::NotVerified(report.mismatches.len()));
    }
    let ranks = rep.ranks();
    let n = ranks.len();
    let mut values: Vec<FieldElement> = rep.thresholds().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            values.push(&ranks[u] + &ranks[v]);
        }
    }
    let delta = match min_positive_gap(&values)? {
        GapBound::Finite(g) => g,
        GapBound::Infinite => Rational::one(),
    };
    let neg_delta = -delta;
    let mut thresholds: Vec<FieldElement> = rep.thresholds().iter().map(|t| t.add_rational(&neg_delta)).collect();
    if thresholds.len().is_multiple_of(2) {
        let top = match values.iter().max() {
            Some(max) => max.add_rational(&Rational::one()),
            None => FieldElement::zero(rep.basis()),
        };
        thresholds.push(top);
    }
    let thresholds = thresholds.iter().rev().map(|t| -t).collect();
    let ranks = ranks.iter().map(|r| -r).collect();
    Representation::new(rep.basis().clone(), ranks, thresholds)
}
