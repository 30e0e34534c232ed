use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::simplex::{maximize, LpOutcome};
use super::OracleError;
use crate::exactnum::Rational;
use crate::graphs::{GraphSpec, Representation};

/// `coeffs · x <= rhs`, or `<` when `strict`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
    pub strict: bool,
}

/// A system of linear inequalities over free rational variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LpProblem {
    pub num_vars: usize,
    pub constraints: Vec<LinearConstraint>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpWitness {
    pub values: Vec<Rational>,
    /// Slack of the strict constraints, positive and at most 1.
    pub margin: Rational,
}

impl LpProblem {
    pub fn new(num_vars: usize) -> Self {
        LpProblem {
            num_vars,
            constraints: Vec::new(),
        }
    }

    /// Adds `Σ c_i x_{v_i} <= rhs` (or `<`) from sparse terms.
    pub fn push(&mut self, terms: &[(usize, i64)], rhs: Rational, strict: bool) {
        let mut coeffs = vec![Rational::zero(); self.num_vars];
        for &(v, c) in terms {
            coeffs[v] += Rational::from_integer(c.into());
        }
        self.constraints.push(LinearConstraint { coeffs, rhs, strict });
    }

    /// True iff `x` satisfies every constraint, strict ones strictly.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.constraints.iter().all(|c| {
            let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, b)| a * b).sum();
            if c.strict {
                lhs < c.rhs
            } else {
                lhs <= c.rhs
            }
        })
    }
}

/// A point satisfying the system, found by maximizing a shared slack `t` on
/// the strict rows; `None` iff no point exists.
pub fn lp_feasible(p: &LpProblem) -> Option<LpWitness> {
    let n = p.num_vars;
    // Columns: x⁺ (n), x⁻ (n), t.
    let mut a = Vec::with_capacity(p.constraints.len() + 1);
    let mut b = Vec::with_capacity(p.constraints.len() + 1);
    for c in &p.constraints {
        let mut row: Vec<Rational> = c.coeffs.clone();
        row.extend(c.coeffs.iter().map(|x| -x));
        row.push(if c.strict { Rational::one() } else { Rational::zero() });
        a.push(row);
        b.push(c.rhs.clone());
    }
    let mut cap = vec![Rational::zero(); 2 * n + 1];
    cap[2 * n] = Rational::one();
    a.push(cap.clone());
    b.push(Rational::one());
    match maximize(&cap, &a, &b) {
        LpOutcome::Optimal { value, point } if value.is_positive() => {
            let values = (0..n).map(|i| &point[i] - &point[n + i]).collect();
            Some(LpWitness { values, margin: value })
        }
        LpOutcome::Optimal { .. } | LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("objective is capped"),
    }
}

/// Per-pair choice of threshold interval: `positions[p]` is the number of
/// thresholds at or below the sum of `pairs[p]`, odd for edges and even for
/// nonedges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntervalAssignment {
    pub threshold_count: usize,
    pub pairs: Vec<(usize, usize)>,
    pub positions: Vec<usize>,
}

impl IntervalAssignment {
    /// Edge interval index `i` with the sum in `[θ_{2i-1}, θ_{2i})`.
    pub fn edge_interval(&self, p: usize) -> Option<usize> {
        let c = self.positions[p];
        (c % 2 == 1).then_some(c.div_ceil(2))
    }

    /// Nonedge gap index `i` with the sum in `[θ_{2i}, θ_{2i+1})`.
    pub fn nonedge_gap(&self, p: usize) -> Option<usize> {
        let c = self.positions[p];
        c.is_multiple_of(2).then_some(c / 2)
    }
}

/// Variable index of `θ_j` (`j >= 2`); `θ_1` is pinned to zero.
fn theta_var(vertex_count: usize, j: usize) -> usize {
    vertex_count + j - 2
}

/// Linear system whose solutions are the representations of `g` realizing
/// `asg`, with `θ_1 = 0`. `order` adds `r_a <= r_b` for each `(a, b)`.
pub fn build_lp(g: &GraphSpec, asg: &IntervalAssignment, order: &[(usize, usize)]) -> Result<LpProblem, OracleError> {
    let n = g.vertex_count();
    let k = asg.threshold_count;
    if asg.pairs.len() != asg.positions.len() {
        return Err(OracleError::Malformed("pairs and positions differ in length"));
    }
    let adj = g.to_explicit();
    let mut lp = LpProblem::new(n + k.saturating_sub(1));
    let zero = Rational::zero;
    let theta = |j: usize| (j >= 2).then(|| theta_var(n, j));
    for j in 1..k {
        let mut terms = vec![(theta_var(n, j + 1), -1)];
        terms.extend(theta(j).map(|v| (v, 1)));
        lp.push(&terms, zero(), true);
    }
    for (&(u, v), &c) in asg.pairs.iter().zip(&asg.positions) {
        if u == v || u >= n || v >= n || c > k || (c % 2 == 1) != adj.is_adjacent(u, v) {
            return Err(OracleError::Malformed("position out of range or of the wrong parity"));
        }
        if c >= 1 {
            let mut terms = vec![(u, -1), (v, -1)];
            terms.extend(theta(c).map(|t| (t, 1)));
            lp.push(&terms, zero(), false);
        }
        if c < k {
            let mut terms = vec![(u, 1), (v, 1)];
            terms.extend(theta(c + 1).map(|t| (t, -1)));
            lp.push(&terms, zero(), true);
        }
    }
    for &(a, b) in order {
        lp.push(&[(a, 1), (b, -1)], zero(), false);
    }
    Ok(lp)
}

/// Rational representation read off a solution of [`build_lp`].
pub fn witness_representation(vertex_count: usize, k: usize, w: &LpWitness) -> Representation {
    let ranks = &w.values[..vertex_count];
    let mut thresholds = Vec::with_capacity(k);
    if k >= 1 {
        thresholds.push(Rational::zero());
        thresholds.extend_from_slice(&w.values[vertex_count..]);
    }
    Representation::from_rationals(ranks, &thresholds).expect("strict threshold rows keep the order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::verify;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn margin_examples() {
        let mut p = LpProblem::new(1);
        p.push(&[(0, 1)], q(1), true);
        p.push(&[(0, -1)], q(0), false);
        let w = lp_feasible(&p).unwrap();
        assert!(w.margin > q(0) && p.satisfied_by(&w.values));
        let mut p = LpProblem::new(1);
        p.push(&[(0, 1)], q(0), true);
        p.push(&[(0, -1)], q(0), false);
        assert!(lp_feasible(&p).is_none());
    }

    fn solve(g: &GraphSpec, k: usize, positions: Vec<usize>) -> Option<Representation> {
        let n = g.vertex_count();
        let pairs: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let asg = IntervalAssignment {
            threshold_count: k,
            pairs,
            positions,
        };
        let lp = build_lp(g, &asg, &[]).unwrap();
        lp_feasible(&lp).map(|w| witness_representation(n, k, &w))
    }

    #[test]
    fn tiny_graphs() {
        let k2 = GraphSpec::disjoint_cliques(1, 2).unwrap();
        let rep = solve(&k2, 1, vec![1]).unwrap();
        assert!(verify(&rep, &k2).unwrap().ok);
        let e2 = GraphSpec::disjoint_cliques(2, 1).unwrap();
        let rep = solve(&e2, 1, vec![0]).unwrap();
        assert!(verify(&rep, &e2).unwrap().ok);
        let p3 = GraphSpec::explicit(3, &[(0, 1), (1, 2)]).unwrap();
        let rep = solve(&p3, 1, vec![1, 0, 1]).unwrap();
        assert!(verify(&rep, &p3).unwrap().ok);
    }

    #[test]
    fn two_k2_at_two_thresholds() {
        let g = GraphSpec::disjoint_cliques(2, 2).unwrap();
        // pairs: 01 e, 02 n, 03 n, 12 n, 13 n, 23 e
        // all nonedges below both edges: (r0+r2)+(r1+r3) < 2θ1 <= (r0+r1)+(r2+r3)
        assert!(solve(&g, 2, vec![1, 0, 0, 0, 0, 1]).is_none());
        assert!(solve(&g, 2, vec![1, 2, 2, 2, 2, 1]).is_none());
        let rep = solve(&g, 2, vec![1, 0, 0, 2, 2, 1]).unwrap();
        assert!(verify(&rep, &g).unwrap().ok);
    }

    #[test]
    fn malformed_assignment() {
        let k2 = GraphSpec::disjoint_cliques(1, 2).unwrap();
        let asg = IntervalAssignment {
            threshold_count: 1,
            pairs: vec![(0, 1)],
            positions: vec![0],
        };
        assert!(build_lp(&k2, &asg, &[]).is_err());
    }
}
