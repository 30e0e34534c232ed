use std::sync::Arc;

use proptest::prelude::*;

use multithreshold::exactnum::{int, rat, Basis, FieldElement};
use multithreshold::graphs::{complement_representation, parse_representation, verify, GraphSpec, Representation, RepresentationFile};

fn element(basis: &Arc<Basis>, c: &[(i64, i64)]) -> FieldElement {
    FieldElement::from_coeffs(basis, c.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
}

/// Random representation over `1, √2, √3` and the graph it defines.
fn arb_rep() -> impl Strategy<Value = (Representation, GraphSpec)> {
    let coeffs = proptest::collection::vec((-6i64..=6, 1i64..=4), 3);
    (
        proptest::collection::vec(coeffs.clone(), 2..7),
        proptest::collection::vec(coeffs, 0..6),
    )
        .prop_map(|(ranks, thresholds)| {
            let basis = Arc::new(Basis::with_first_primes(2));
            let ranks: Vec<FieldElement> = ranks.iter().map(|c| element(&basis, c)).collect();
            let mut thresholds: Vec<FieldElement> = thresholds.iter().map(|c| element(&basis, c)).collect();
            thresholds.sort();
            thresholds.dedup();
            let rep = Representation::new(basis, ranks, thresholds).unwrap();
            let n = rep.vertex_count();
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    // Parity from a direct count, independent of `position`.
                    let s = &rep.ranks()[u] + &rep.ranks()[v];
                    if rep.thresholds().iter().filter(|t| **t <= s).count() % 2 == 1 {
                        edges.push((u, v));
                    }
                }
            }
            let g = GraphSpec::explicit(n, &edges).unwrap();
            (rep, g)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parity_and_interval_tests_agree((rep, g) in arb_rep()) {
        prop_assert!(verify(&rep, &g).unwrap().ok);
        let n = rep.vertex_count();
        for u in 0..n {
            for v in u + 1..n {
                prop_assert_eq!(rep.is_edge_under(u, v).unwrap(), rep.is_edge_by_interval(u, v).unwrap());
            }
        }
    }

    #[test]
    fn shifting_preserves_the_graph((rep, g) in arb_rep(), c in proptest::collection::vec((-9i64..=9, 1i64..=5), 3)) {
        let c = element(rep.basis(), &c);
        prop_assert!(verify(&rep.shift(&c).unwrap(), &g).unwrap().ok);
    }

    #[test]
    fn complement_twice((rep, g) in arb_rep()) {
        let co = complement_representation(&rep, &g).unwrap();
        prop_assert!(verify(&co, &g.complement()).unwrap().ok);
        prop_assert!(co.threshold_count() <= rep.threshold_count() + 1);
        let back = complement_representation(&co, &g.complement()).unwrap();
        prop_assert!(verify(&back, &g).unwrap().ok);
    }

    #[test]
    fn restriction_gives_induced_subgraph((rep, g) in arb_rep(), pick in any::<u8>()) {
        let vertices: Vec<usize> = (0..rep.vertex_count()).filter(|v| pick >> v & 1 == 1).collect();
        prop_assume!(!vertices.is_empty());
        let sub = rep.restrict(&vertices).unwrap();
        prop_assert!(verify(&sub, &g.induced(&vertices).unwrap()).unwrap().ok);
    }

    #[test]
    fn files_round_trip((rep, g) in arb_rep()) {
        let text = RepresentationFile::new(&g, &rep).to_json();
        prop_assert_eq!(parse_representation(&text).unwrap(), (g, rep));
    }
}

#[test]
fn complement_of_single_edge() {
    let k2 = GraphSpec::disjoint_cliques(1, 2).unwrap();
    let rep = Representation::from_rationals(&[int(1), int(1)], &[int(2)]).unwrap();
    let co = complement_representation(&rep, &k2).unwrap();
    assert_eq!(co.ranks(), Representation::from_rationals(&[int(-1), int(-1)], &[]).unwrap().ranks());
    assert_eq!(co.threshold_count(), 1);
    assert!(verify(&co, &k2.complement()).unwrap().ok);
    assert!(k2.complement().is_edgeless());
}

#[test]
fn complement_rejects_wrong_graph() {
    let k2 = GraphSpec::disjoint_cliques(1, 2).unwrap();
    let rep = Representation::from_rationals(&[int(0), int(0)], &[int(2)]).unwrap();
    assert!(complement_representation(&rep, &k2).is_err());
}
