#![allow(dead_code)]

//! Properties shared by the fuzz targets and the corpus replay test. Each
//! function must not panic on any input.

use multithreshold::exactnum::{format_rational, parse_rational, Basis, FieldElement};
use multithreshold::graphs::{parse_representation, verify, GraphSpec, RepresentationFile};

pub fn rational(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(q) = parse_rational(s) {
        // Only canonical text is accepted, so printing gives it back.
        assert_eq!(format_rational(&q), s);
    }
}

pub fn basis(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let items: Vec<&str> = s.split(',').collect();
    if let Ok(basis) = Basis::parse_strings(&items) {
        assert_eq!(basis.to_strings(), items);
    }
}

pub fn field_element(data: &[u8]) {
    if let Ok(x) = serde_json::from_slice::<FieldElement>(data) {
        let text = serde_json::to_string(&x).unwrap();
        let y: FieldElement = serde_json::from_str(&text).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.cmp(&y), std::cmp::Ordering::Equal);
        let _ = x.signum();
    }
}

pub fn graph(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = s.parse::<GraphSpec>() {
        let text = serde_json::to_string(&g).unwrap();
        let back: GraphSpec = text.parse().unwrap();
        assert_eq!(back, g);
        let n = g.vertex_count();
        assert!(n > 0);
        if n <= 256 {
            assert_eq!(g.complement().complement().to_explicit(), g.to_explicit());
        }
    }
}

pub fn representation(data: &[u8]) {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok((graph, rep)) = parse_representation(s) {
        let text = RepresentationFile::new(&graph, &rep).to_json();
        assert_eq!(parse_representation(&text).unwrap(), (graph.clone(), rep.clone()));
        if graph.vertex_count() <= 64 {
            let report = verify(&rep, &graph).unwrap();
            assert_eq!(report.ok, report.mismatches.is_empty());
        }
    }
}
