//! Boundary sequences and the closed-form threshold numbers of the four
//! clique families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The four graph families with known threshold numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `n` disjoint triangles.
    Nk3,
    /// Complete multipartite graph with `n` parts of size 3.
    Knx3,
    /// `n` disjoint copies of `K4`.
    Nk4,
    /// Complete multipartite graph with `n` parts of size 4.
    Knx4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Nk3, Family::Knx3, Family::Nk4, Family::Knx4];

    pub fn clique_size(self) -> usize {
        match self {
            Family::Nk3 | Family::Knx3 => 3,
            Family::Nk4 | Family::Knx4 => 4,
        }
    }

    pub fn is_multipartite(self) -> bool {
        matches!(self, Family::Knx3 | Family::Knx4)
    }

    /// Smallest `n` covered by the formula.
    pub fn min_n(self) -> u64 {
        if self.is_multipartite() {
            2
        } else {
            1
        }
    }

    pub fn complement(self) -> Family {
        match self {
            Family::Nk3 => Family::Knx3,
            Family::Knx3 => Family::Nk3,
            Family::Nk4 => Family::Knx4,
            Family::Knx4 => Family::Nk4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Nk3 => "nk3",
            Family::Knx3 => "knx3",
            Family::Nk4 => "nk4",
            Family::Knx4 => "knx4",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("unknown family {0:?}; expected nk3, knx3, nk4 or knx4")]
    UnknownFamily(String),
    #[error("{family} is defined for n >= {min}, got {n}")]
    OutOfRange { family: Family, n: u64, min: u64 },
    #[error("clique size {0} is not supported")]
    CliqueSize(usize),
}

impl FromStr for Family {
    type Err = FormulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| FormulaError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    /// `n` equals the governing sequence at `m - 1`.
    Boundary,
    /// `n` lies strictly between consecutive sequence values.
    Interior,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaResult {
    pub theta: u64,
    pub regime: Regime,
    pub m: u64,
}

pub fn choose3(a: u64) -> u64 {
    if a < 3 {
        0
    } else {
        a * (a - 1) * (a - 2) / 6
    }
}

pub fn seq_q(m: u64) -> u64 {
    m + choose3(m) + 1
}

pub fn seq_p(m: u64) -> u64 {
    seq_q(m) + 1
}

pub fn seq_t(m: u64) -> u64 {
    m + choose3(m / 2) + choose3(m.div_ceil(2)) + 1
}

pub fn seq_s(m: u64) -> u64 {
    seq_t(m) + 1
}

/// Finds `m >= 1` with `seq(m - 1) <= n < seq(m)`.
fn locate(seq: fn(u64) -> u64, n: u64) -> (u64, Regime) {
    let mut m = 1;
    while seq(m) <= n {
        m += 1;
    }
    let regime = if seq(m - 1) == n {
        Regime::Boundary
    } else {
        Regime::Interior
    };
    (m, regime)
}

fn check_range(family: Family, n: u64) -> Result<(), FormulaError> {
    if n < family.min_n() {
        return Err(FormulaError::OutOfRange {
            family,
            n,
            min: family.min_n(),
        });
    }
    Ok(())
}

pub fn theta(family: Family, n: u64) -> Result<ThetaResult, FormulaError> {
    check_range(family, n)?;
    let seq: fn(u64) -> u64 = match family {
        Family::Nk3 => seq_q,
        Family::Knx3 => seq_p,
        Family::Nk4 => seq_t,
        Family::Knx4 => seq_s,
    };
    let (m, regime) = locate(seq, n);
    let theta = match (family.is_multipartite(), regime) {
        (false, Regime::Boundary) => 2 * m - 1,
        (false, Regime::Interior) => 2 * m,
        (true, Regime::Boundary) => 2 * m,
        (true, Regime::Interior) => 2 * m + 1,
    };
    Ok(ThetaResult { theta, regime, m })
}

pub fn theta_nk3(n: u64) -> Result<ThetaResult, FormulaError> {
    theta(Family::Nk3, n)
}

pub fn theta_knx3(n: u64) -> Result<ThetaResult, FormulaError> {
    theta(Family::Knx3, n)
}

pub fn theta_nk4(n: u64) -> Result<ThetaResult, FormulaError> {
    theta(Family::Nk4, n)
}

pub fn theta_knx4(n: u64) -> Result<ThetaResult, FormulaError> {
    theta(Family::Knx4, n)
}

/// Largest number of cliques (or parts) of the given size whose triangles can
/// be colored with `m` colors without breaking the coloring constraints.
pub fn max_parts_bound(m: u64, clique_size: usize) -> Result<u64, FormulaError> {
    match clique_size {
        3 => Ok(m + choose3(m)),
        4 => Ok(m + choose3(m / 2) + choose3(m.div_ceil(2))),
        other => Err(FormulaError::CliqueSize(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn thetas(family: Family, ns: std::ops::RangeInclusive<u64>) -> Vec<u64> {
        ns.map(|n| theta(family, n).unwrap().theta).collect()
    }

    #[test]
    fn sequence_fixtures() {
        assert_eq!((0..5).map(seq_q).collect::<Vec<_>>(), [1, 2, 3, 5, 9]);
        assert_eq!((0..5).map(seq_p).collect::<Vec<_>>(), [2, 3, 4, 6, 10]);
        assert_eq!(
            (0..8).map(seq_t).collect::<Vec<_>>(),
            [1, 2, 3, 4, 5, 7, 9, 13]
        );
        assert!((0..30).all(|m| seq_s(m) == seq_t(m) + 1));
    }

    #[test]
    fn theta_fixtures() {
        assert_eq!(thetas(Family::Nk3, 1..=5), [1, 3, 5, 6, 7]);
        assert_eq!(thetas(Family::Knx3, 2..=5), [2, 4, 6, 7]);
        assert_eq!(thetas(Family::Nk4, 1..=2), [1, 3]);
        assert_eq!(thetas(Family::Knx4, 2..=4), [2, 4, 6]);
        let five = theta_nk4(5).unwrap();
        assert_eq!((five.theta, five.regime, five.m), (9, Regime::Boundary, 5));
    }

    #[test]
    fn out_of_range_is_rejected() {
        assert!(theta_nk3(0).is_err());
        assert!(theta_knx3(1).is_err());
        assert!(theta_nk4(0).is_err());
        assert!(theta_knx4(1).is_err());
    }

    #[test]
    fn regime_matches_sequence() {
        for family in Family::ALL {
            for n in family.min_n()..300 {
                let r = theta(family, n).unwrap();
                let parity = if family.is_multipartite() { 0 } else { 1 };
                assert_eq!(r.regime == Regime::Boundary, r.theta % 2 == parity);
            }
        }
    }

    #[test]
    fn monotone_with_small_steps() {
        for family in Family::ALL {
            let v = thetas(family, family.min_n()..=400);
            for w in v.windows(2) {
                assert!(w[0] <= w[1] && w[1] <= w[0] + 2, "{family}: {w:?}");
            }
        }
    }

    #[test]
    fn complement_pairs_have_the_allowed_shape() {
        for (a, b) in [(Family::Nk3, Family::Knx3), (Family::Nk4, Family::Knx4)] {
            for n in 2..400 {
                let x = theta(a, n).unwrap().theta;
                let y = theta(b, n).unwrap().theta;
                let (lo, hi) = (x.min(y), x.max(y));
                assert!(lo == hi || (lo % 2 == 0 && hi == lo + 1), "{a} n={n}: {x} {y}");
            }
        }
    }

    #[test]
    fn parts_bound_values() {
        assert_eq!(max_parts_bound(3, 3).unwrap(), 4);
        assert_eq!(max_parts_bound(0, 3).unwrap(), 0);
        assert_eq!(max_parts_bound(0, 4).unwrap(), 0);
        assert_eq!(max_parts_bound(6, 4).unwrap(), 8);
        assert!(max_parts_bound(2, 5).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
            assert_eq!(f.complement().complement(), f);
        }
        assert!("k33".parse::<Family>().is_err());
    }
}
