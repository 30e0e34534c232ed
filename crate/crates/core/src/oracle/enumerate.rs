use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::lp::{build_lp, lp_feasible, witness_representation, IntervalAssignment};
use super::OracleError;
use crate::graphs::{GraphSpec, Representation};

pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest number of interval assignments the search may cover.
    pub budget: u64,
    /// Restrict to rank-sorted representations of family graphs.
    pub prune: bool,
    /// Scan assignments sequentially so the witness is reproducible.
    pub deterministic: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            budget: DEFAULT_BUDGET,
            prune: true,
            deterministic: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Yes(Representation),
    No,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub answer: OracleAnswer,
    /// Assignments covered, either by an LP or by a pruned subtree. Equals the
    /// full product of per-pair choices when the answer is no.
    pub assignments_checked: u64,
    pub lps_solved: u64,
}

/// `r_a <= r_b` constraints every family graph representation can be
/// relabelled to satisfy: ranks ascend inside each group, and groups of equal
/// size are ordered by their first vertex.
fn canonical_order(g: &GraphSpec) -> Vec<(usize, usize)> {
    let Some(groups) = g.groups() else {
        return Vec::new();
    };
    let mut order = Vec::new();
    for r in &groups {
        for v in r.start + 1..r.end {
            order.push((v - 1, v));
        }
    }
    for (i, a) in groups.iter().enumerate() {
        if let Some(b) = groups[i + 1..].iter().find(|b| b.len() == a.len()) {
            order.push((a.start, b.start));
        }
    }
    order
}

/// Reflexive-transitive closure of `order` as a dense matrix.
fn closure(n: usize, order: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut le = vec![vec![false; n]; n];
    for (v, row) in le.iter_mut().enumerate() {
        row[v] = true;
    }
    for &(a, b) in order {
        le[a][b] = true;
    }
    for m in 0..n {
        let via = le[m].clone();
        for row in le.iter_mut().filter(|row| row[m]) {
            for (x, &y) in row.iter_mut().zip(&via) {
                *x |= y;
            }
        }
    }
    le
}

struct Search<'a> {
    g: &'a GraphSpec,
    k: usize,
    pairs: Vec<(usize, usize)>,
    choices: Vec<Vec<usize>>,
    /// Product of choice counts of pairs `p..`.
    suffix: Vec<u64>,
    /// For pair `p`: earlier pairs `q` with `sum(q) <= sum(p)` (`true`) or
    /// `sum(p) <= sum(q)` (`false`) forced by the order.
    dominance: Vec<Vec<(usize, bool)>>,
    order: Vec<(usize, usize)>,
    stop: AtomicBool,
    checked: AtomicU64,
    lps: AtomicU64,
}

impl Search<'_> {
    fn consistent(&self, positions: &[usize], p: usize) -> bool {
        self.dominance[p].iter().all(|&(q, below)| {
            if below {
                positions[q] <= positions[p]
            } else {
                positions[p] <= positions[q]
            }
        })
    }

    fn leaf(&self, positions: &[usize]) -> Option<Representation> {
        self.checked.fetch_add(1, Ordering::Relaxed);
        self.lps.fetch_add(1, Ordering::Relaxed);
        let asg = IntervalAssignment {
            threshold_count: self.k,
            pairs: self.pairs.clone(),
            positions: positions.to_vec(),
        };
        let lp = build_lp(self.g, &asg, &self.order).expect("positions come from valid choices");
        lp_feasible(&lp).map(|w| witness_representation(self.g.vertex_count(), self.k, &w))
    }

    fn dfs(&self, positions: &mut Vec<usize>) -> Option<Representation> {
        if self.stop.load(Ordering::Relaxed) {
            return None;
        }
        let p = positions.len();
        if p == self.pairs.len() {
            return self.leaf(positions);
        }
        for &c in &self.choices[p] {
            positions.push(c);
            let found = if self.consistent(positions, p) {
                self.dfs(positions)
            } else {
                self.checked.fetch_add(self.suffix[p + 1], Ordering::Relaxed);
                None
            };
            positions.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Consistent prefixes of length `depth`, counting pruned subtrees.
    fn prefixes(&self, depth: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for p in 0..depth {
            let mut next = Vec::new();
            for prefix in out {
                for &c in &self.choices[p] {
                    let mut x = prefix.clone();
                    x.push(c);
                    if self.consistent(&x, p) {
                        next.push(x);
                    } else {
                        self.checked.fetch_add(self.suffix[p + 1], Ordering::Relaxed);
                    }
                }
            }
            out = next;
        }
        out
    }
}

/// Decides whether `g` has a representation with exactly `k` thresholds by
/// trying every interval assignment.
pub fn is_k_threshold(g: &GraphSpec, k: usize, cfg: &OracleConfig) -> Result<OracleReport, OracleError> {
    let n = g.vertex_count();
    let adj = g.to_explicit();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let choices: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(u, v)| {
            let parity = usize::from(adj.is_adjacent(u, v));
            (parity..=k).step_by(2).collect()
        })
        .collect();
    let mut suffix = vec![1u64; pairs.len() + 1];
    for p in (0..pairs.len()).rev() {
        let c = choices[p].len() as u64;
        suffix[p] = suffix[p + 1]
            .checked_mul(c)
            .filter(|&x| x <= cfg.budget)
            .ok_or(OracleError::BudgetExceeded { budget: cfg.budget })?;
    }
    let order = if cfg.prune { canonical_order(g) } else { Vec::new() };
    let le = closure(n, &order);
    let below = |(a, c): (usize, usize), (b, d): (usize, usize)| (le[a][b] && le[c][d]) || (le[a][d] && le[c][b]);
    let dominance = (0..pairs.len())
        .map(|p| {
            (0..p)
                .filter_map(|q| {
                    if below(pairs[q], pairs[p]) {
                        Some((q, true))
                    } else if below(pairs[p], pairs[q]) {
                        Some((q, false))
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    let search = Search {
        g,
        k,
        pairs,
        choices,
        suffix,
        dominance,
        order,
        stop: AtomicBool::new(false),
        checked: AtomicU64::new(0),
        lps: AtomicU64::new(0),
    };
    let found = if search.suffix[0] == 0 {
        None
    } else if cfg.deterministic {
        search.dfs(&mut Vec::new())
    } else {
        let mut depth = 0;
        while depth < search.pairs.len() && search.suffix[0] / search.suffix[depth] < 256 {
            depth += 1;
        }
        search.prefixes(depth).into_par_iter().find_map_any(|mut prefix| {
            let found = search.dfs(&mut prefix);
            if found.is_some() {
                search.stop.store(true, Ordering::Relaxed);
            }
            found
        })
    };
    Ok(OracleReport {
        answer: found.map_or(OracleAnswer::No, OracleAnswer::Yes),
        assignments_checked: search.checked.into_inner(),
        lps_solved: search.lps.into_inner(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdNumber {
    pub theta: Option<usize>,
    pub witness: Option<Representation>,
    /// One report per `k` tried, starting at `k = 1`.
    pub reports: Vec<OracleReport>,
}

/// Smallest `k <= k_max` with a representation, or `None` in `theta` when
/// every `k` up to `k_max` fails.
pub fn threshold_number(g: &GraphSpec, k_max: usize, cfg: &OracleConfig) -> Result<ThresholdNumber, OracleError> {
    if g.is_edgeless() {
        let rep = Representation::from_rationals(&vec![Default::default(); g.vertex_count()], &[])?;
        return Ok(ThresholdNumber {
            theta: Some(0),
            witness: Some(rep),
            reports: Vec::new(),
        });
    }
    let mut reports = Vec::new();
    for k in 1..=k_max {
        let report = is_k_threshold(g, k, cfg)?;
        let witness = match &report.answer {
            OracleAnswer::Yes(rep) => Some(rep.clone()),
            OracleAnswer::No => None,
        };
        reports.push(report);
        if witness.is_some() {
            return Ok(ThresholdNumber {
                theta: Some(k),
                witness,
                reports,
            });
        }
    }
    Ok(ThresholdNumber {
        theta: None,
        witness: None,
        reports,
    })
}
