//! Exact arithmetic in the rational span of `1` and square roots of distinct
//! primes. Equality is structural; ordering is decided by interval refinement.

mod basis;
mod field;
mod interval;
mod rational;

use std::cmp::Ordering;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

pub use basis::{first_primes, Basis, BasisError, BasisSymbol};
pub use field::{FieldElement, FieldElementJson};
pub use interval::RationalInterval;
pub use rational::{format_rational, parse_rational, ParseRationalError, Rational};
pub use rational::{int, rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("operands live over different bases")]
    BasisMismatch,
    #[error("basis index {index} out of range for a basis of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("expected {expected} coefficients, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("basis has no unit symbol")]
    NoUnit,
    #[error("basis has no symbol {0}")]
    MissingSymbol(BasisSymbol),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
}

/// Result of [`min_positive_gap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GapBound {
    /// Every pair of distinct values differs by more than this positive rational.
    Finite(Rational),
    /// Fewer than two distinct values.
    Infinite,
}

impl GapBound {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            GapBound::Finite(g) => Some(g),
            GapBound::Infinite => None,
        }
    }
}

/// Sorts a copy of `values` and removes duplicates.
pub fn sorted_distinct(values: &[FieldElement]) -> Result<Vec<FieldElement>, ExactError> {
    if let Some(first) = values.first() {
        if values.iter().any(|v| !v.same_basis(first)) {
            return Err(ExactError::BasisMismatch);
        }
    }
    let distinct: HashSet<&FieldElement> = values.iter().collect();
    let mut sorted: Vec<FieldElement> = distinct.into_iter().cloned().collect();
    sorted.sort_unstable();
    Ok(sorted)
}

/// A positive rational strictly below the smallest distance between two
/// distinct values.
///
/// The minimum over all pairs is attained by neighbours in sorted order, so
/// only those differences are refined. The returned bound is half of the
/// smallest certified lower bound.
pub fn min_positive_gap(values: &[FieldElement]) -> Result<GapBound, ExactError> {
    let sorted = sorted_distinct(values)?;
    let mut best: Option<Rational> = None;
    for pair in sorted.windows(2) {
        let diff = &pair[1] - &pair[0];
        let lower = certified_lower_bound(&diff);
        if best.as_ref().is_none_or(|b| lower < *b) {
            best = Some(lower);
        }
    }
    Ok(match best {
        Some(g) => GapBound::Finite(g / Rational::from_integer(BigInt::from(2))),
        None => GapBound::Infinite,
    })
}

/// Positive rational lower bound on a strictly positive element.
fn certified_lower_bound(positive: &FieldElement) -> Rational {
    debug_assert_eq!(positive.signum(), Ordering::Greater);
    let mut precision = 64;
    loop {
        let lower = positive.enclosure(precision).magnitude_lower_bound();
        if lower.is_positive() {
            return lower;
        }
        precision *= 2;
    }
}
