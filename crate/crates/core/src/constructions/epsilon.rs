use num_traits::One;

use crate::exactnum::{min_positive_gap, ExactError, FieldElement, GapBound, Rational};

/// A positive rational below half the smallest distance between distinct
/// values; `1` when all values coincide.
pub fn select_epsilon(values: &[FieldElement]) -> Result<Rational, ExactError> {
    Ok(match min_positive_gap(values)? {
        GapBound::Finite(g) => g / Rational::from_integer(2.into()),
        GapBound::Infinite => Rational::one(),
    })
}

/// All sums `r_u + r_v` with `u < v`.
pub fn pair_sums(ranks: &[FieldElement]) -> Vec<FieldElement> {
    let n = ranks.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            out.push(&ranks[u] + &ranks[v]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactnum::Basis;

    #[test]
    fn epsilon_examples() {
        let b = Arc::new(Basis::with_first_primes(1));
        let i = |x| FieldElement::from_integer(&b, x).unwrap();
        let e = select_epsilon(&[i(0), i(1)]).unwrap();
        assert!(e > Rational::from_integer(0.into()) && e <= Rational::new(1.into(), 2.into()));
        assert_eq!(select_epsilon(&[i(3), i(3)]).unwrap(), Rational::one());
        let s = FieldElement::sqrt_of(&b, 2).unwrap();
        let e = select_epsilon(&[s.clone(), i(1)]).unwrap();
        assert!(s.add_rational(&-e) > i(1));
    }

    #[test]
    fn pair_sums_in_order() {
        let b = Arc::new(Basis::rational());
        let i = |x| FieldElement::from_integer(&b, x).unwrap();
        assert_eq!(pair_sums(&[i(1), i(2), i(4)]), [i(3), i(5), i(6)]);
        assert!(pair_sums(&[i(1)]).is_empty());
    }
}
