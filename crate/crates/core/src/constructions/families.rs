use std::sync::Arc;

use num_traits::{One, Zero};

use super::epsilon::{pair_sums, select_epsilon};
use super::k4::{ab_assignment, ab_eps_assignment, PairedValues, Quad, QuadKind};
use super::triples::{triple_assignment, triple_ranks};
use super::ConstructionError;
use crate::exactnum::{Basis, FieldElement, Rational};
use crate::formulas::{theta, Family, Regime};
use crate::graphs::{complement_representation, GraphSpec, Representation};

const MAX_DOUBLINGS: u32 = 64;

/// A threshold pair `[center, center + width + ε')` around a group of sums,
/// possibly missing its lower or upper end.
struct Window {
    center: FieldElement,
    width: Rational,
    open: bool,
    close: bool,
}

impl Window {
    fn full(center: FieldElement, width: Rational) -> Self {
        Window {
            center,
            width,
            open: true,
            close: true,
        }
    }

    fn close_only(center: FieldElement) -> Self {
        Window {
            center,
            width: Rational::zero(),
            open: false,
            close: true,
        }
    }

    fn open_only(center: FieldElement) -> Self {
        Window {
            center,
            width: Rational::zero(),
            open: true,
            close: false,
        }
    }
}

fn assemble(
    basis: Arc<Basis>,
    ranks: Vec<FieldElement>,
    mut windows: Vec<Window>,
) -> Result<Representation, ConstructionError> {
    let mut values = pair_sums(&ranks);
    for w in &windows {
        values.push(w.center.clone());
        if !w.width.is_zero() {
            values.push(w.center.add_rational(&w.width));
        }
    }
    let eps = select_epsilon(&values)?;
    windows.sort_by(|x, y| x.center.cmp(&y.center));
    let mut thresholds = Vec::with_capacity(2 * windows.len());
    for w in windows {
        if w.open {
            thresholds.push(w.center.clone());
        }
        if w.close {
            thresholds.push(w.center.add_rational(&(&w.width + &eps)));
        }
    }
    Ok(Representation::new(basis, ranks, thresholds)?)
}

/// Tries the scale factors 1, 2, 4, ... until `attempt` succeeds.
fn rescale<T>(what: &'static str, mut attempt: impl FnMut(&Rational) -> Result<Option<T>, ConstructionError>) -> Result<T, ConstructionError> {
    let mut c = Rational::one();
    for _ in 0..MAX_DOUBLINGS {
        if let Some(found) = attempt(&c)? {
            return Ok(found);
        }
        c = &c + &c;
    }
    Err(ConstructionError::Scaling(what))
}

fn all_within(ranks: &[FieldElement], lo: Option<&FieldElement>, hi: &FieldElement) -> bool {
    ranks.iter().all(|r| r < hi && lo.is_none_or(|lo| lo < r))
}

fn symbols(basis: &Arc<Basis>, range: std::ops::RangeInclusive<usize>) -> Vec<FieldElement> {
    range
        .map(|i| FieldElement::basis_symbol(basis, i).expect("index within basis"))
        .collect()
}

fn flatten(quads: &[Quad]) -> Vec<FieldElement> {
    quads.iter().flat_map(Quad::ranks).collect()
}

fn family_m(family: Family, n: usize) -> Result<(usize, Regime), ConstructionError> {
    let r = theta(family, n as u64)?;
    Ok((r.m as usize, r.regime))
}

/// Representation of `n` disjoint triangles with the least number of thresholds.
pub fn construct_nk3(n: usize) -> Result<Representation, ConstructionError> {
    let (m, regime) = family_m(Family::Nk3, n)?;
    let basis = Arc::new(Basis::with_first_primes(m));
    match regime {
        Regime::Interior => {
            let a = symbols(&basis, 1..=m);
            let ranks = triple_assignment(n, &a)?.ranks();
            let windows = a.into_iter().map(|x| Window::full(x, Rational::zero())).collect();
            assemble(basis, ranks, windows)
        }
        Regime::Boundary => {
            let a = symbols(&basis, 1..=m - 1);
            let mut ranks = triple_assignment(n - 1, &a)?.ranks();
            let base = FieldElement::basis_symbol(&basis, m)?;
            let top = rescale("top value of nK3", |c| {
                let top = base.scale(c);
                Ok(all_within(&ranks, None, &top.half()).then_some(top))
            })?;
            ranks.extend(triple_ranks(&top, &top, &top));
            let mut windows: Vec<Window> = a.into_iter().map(|x| Window::full(x, Rational::zero())).collect();
            windows.push(Window::open_only(top));
            assemble(basis, ranks, windows)
        }
    }
}

/// Representation of the complete multipartite graph with `n` parts of size 3.
pub fn construct_knx3(n: usize) -> Result<Representation, ConstructionError> {
    let (m, regime) = family_m(Family::Knx3, n)?;
    match regime {
        Regime::Interior => {
            let rep = construct_nk3(n)?;
            Ok(complement_representation(&rep, &GraphSpec::family(Family::Nk3, n)?)?)
        }
        Regime::Boundary => {
            let basis = Arc::new(Basis::with_first_primes(m + 1));
            let middle = symbols(&basis, 2..=m);
            let mid_ranks = triple_assignment(n - 2, &middle)?.ranks();
            let (first, last) = (
                FieldElement::basis_symbol(&basis, 1)?,
                FieldElement::basis_symbol(&basis, m + 1)?,
            );
            let (low, high) = rescale("outer values of Knx3", |c| {
                let low = -first.scale(c);
                let high = last.scale(c);
                Ok(all_within(&mid_ranks, Some(&low.half()), &high.half()).then_some((low, high)))
            })?;
            let mut ranks = mid_ranks;
            ranks.extend(triple_ranks(&low, &low, &low));
            ranks.extend(triple_ranks(&high, &high, &high));
            let mut windows = vec![Window::close_only(low)];
            windows.extend(middle.into_iter().map(|x| Window::full(x, Rational::zero())));
            windows.push(Window::open_only(high));
            assemble(basis, ranks, windows)
        }
    }
}

/// `a_i` from the first `count` basis symbols and `N` on the next one,
/// scaled above every `a_i`.
fn paired_values(basis: &Arc<Basis>, count: usize) -> Result<PairedValues, ConstructionError> {
    let a = symbols(basis, 1..=count);
    let base = FieldElement::basis_symbol(basis, count + 1)?;
    let n = rescale("pair total", |c| {
        let n = base.scale(c);
        Ok(a.iter().all(|x| x < &n).then_some(n))
    })?;
    Ok(PairedValues::new(a, n))
}

/// Quads of the (A, B)- or (A, B, ε)-assignment with their threshold windows.
fn block(p: &PairedValues, with_eps: bool, eps: &Rational) -> Result<(Vec<Quad>, Vec<Window>), ConstructionError> {
    if !with_eps {
        let windows = p.a().iter().chain(p.b()).map(|x| Window::full(x.clone(), Rational::zero()));
        return Ok((ab_assignment(p), windows.collect()));
    }
    let quads = ab_eps_assignment(p, eps)?;
    let mut windows: Vec<Window> = p.a().iter().chain(p.b()).map(|x| Window::full(x.clone(), eps.clone())).collect();
    windows.push(Window::full(p.center(eps), Rational::zero()));
    Ok((quads, windows))
}

/// ε for the perturbed assignment, taken from every rank sum of its
/// unperturbed version together with the `extra` quads.
fn block_epsilon(p: &PairedValues, with_eps: bool, extra: &[Quad]) -> Result<Rational, ConstructionError> {
    if !with_eps {
        return Ok(Rational::zero());
    }
    let mut quads = ab_eps_assignment(p, &Rational::zero())?;
    quads.extend_from_slice(extra);
    Ok(select_epsilon(&pair_sums(&flatten(&quads)))?)
}

/// Representation of `n` disjoint copies of `K4` with the least number of thresholds.
pub fn construct_nk4(n: usize) -> Result<Representation, ConstructionError> {
    let (m, regime) = family_m(Family::Nk4, n)?;
    match regime {
        Regime::Interior => {
            let count = m / 2;
            let with_eps = m % 2 == 1;
            let basis = Arc::new(Basis::with_first_primes(count + 1));
            let p = paired_values(&basis, count)?;
            let eps = block_epsilon(&p, with_eps, &[])?;
            let (mut quads, windows) = block(&p, with_eps, &eps)?;
            quads.truncate(n);
            assemble(basis, flatten(&quads), windows)
        }
        Regime::Boundary => {
            let count = (m - 1) / 2;
            let with_eps = (m - 1) % 2 == 1;
            let basis = Arc::new(Basis::with_first_primes(count + 2));
            let p = paired_values(&basis, count)?;
            let base = FieldElement::basis_symbol(&basis, count + 2)?;
            let (quads, mut windows, top) = rescale("top value of nK4", |c| {
                let top = base.scale(c);
                let top_quad = Quad::uniform(QuadKind::I, &top);
                let eps = block_epsilon(&p, with_eps, std::slice::from_ref(&top_quad))?;
                let (mut quads, windows) = block(&p, with_eps, &eps)?;
                if !all_within(&flatten(&quads), None, &top.half()) {
                    return Ok(None);
                }
                quads.push(top_quad);
                Ok(Some((quads, windows, top)))
            })?;
            windows.push(Window::open_only(top));
            assemble(basis, flatten(&quads), windows)
        }
    }
}

/// Representation of the complete multipartite graph with `n` parts of size 4.
pub fn construct_knx4(n: usize) -> Result<Representation, ConstructionError> {
    let (m, regime) = family_m(Family::Knx4, n)?;
    match regime {
        Regime::Interior => {
            let rep = construct_nk4(n)?;
            Ok(complement_representation(&rep, &GraphSpec::family(Family::Nk4, n)?)?)
        }
        Regime::Boundary => {
            let count = (m - 1) / 2;
            let with_eps = (m - 1) % 2 == 1;
            let basis = Arc::new(Basis::with_first_primes(count + 2));
            let p = paired_values(&basis, count)?;
            let base = FieldElement::basis_symbol(&basis, count + 2)?;
            let (quads, mut windows, low, high) = rescale("outer values of Knx4", |c| {
                let low = -base.scale(c);
                let high = p.n() - &low;
                let extra = [Quad::uniform(QuadKind::I, &low), Quad::uniform(QuadKind::I, &high)];
                let eps = block_epsilon(&p, with_eps, &extra)?;
                let (mut quads, windows) = block(&p, with_eps, &eps)?;
                if !all_within(&flatten(&quads), Some(&low.half()), &high.half()) {
                    return Ok(None);
                }
                quads.extend(extra);
                Ok(Some((quads, windows, low, high)))
            })?;
            windows.push(Window::close_only(low));
            windows.push(Window::open_only(high));
            assemble(basis, flatten(&quads), windows)
        }
    }
}

pub fn construct(family: Family, n: usize) -> Result<Representation, ConstructionError> {
    match family {
        Family::Nk3 => construct_nk3(n),
        Family::Knx3 => construct_knx3(n),
        Family::Nk4 => construct_nk4(n),
        Family::Knx4 => construct_knx4(n),
    }
}
