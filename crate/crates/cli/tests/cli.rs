use std::fs;

use serde_json::Value;

use multithreshold::colorings::{certify_all, ColorTable};
use multithreshold::constructions::construct;
use multithreshold::formulas::Family;
use multithreshold::graphs::{parse_representation, GraphSpec, RepresentationFile};
use multithreshold_cli::run;

fn call(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("multithreshold").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(s: &str) -> Value {
    serde_json::from_str(s.trim()).unwrap()
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["construct", "--family", "nk3", "--n", "4", "--out", p]);
    assert_eq!((code, out.as_str()), (0, ""));
    let (code, out, _) = call(&["verify", "--rep", p]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["ok"], Value::Bool(true));
    assert_eq!(v["threshold_count"], 6);
    let (code, out, _) = call(&["certify", "--rep", p]);
    assert_eq!((code, out.as_str()), (0, ""));
}

#[test]
fn construct_matches_library() {
    for family in Family::ALL {
        let n = family.min_n() as usize + 2;
        let (code, out, _) = call(&["construct", "--family", family.name(), "--n", &n.to_string()]);
        assert_eq!(code, 0);
        let rep = construct(family, n).unwrap();
        let graph = GraphSpec::family(family, n).unwrap();
        assert_eq!(out, RepresentationFile::new(&graph, &rep).to_json() + "\n");
        assert_eq!(parse_representation(&out).unwrap(), (graph, rep));
    }
}

#[test]
fn emit_sums_writes_side_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let (code, _, _) = call(&["construct", "--family", "knx3", "--n", "3", "--out", p, "--emit-sums"]);
    assert_eq!(code, 0);
    let sums = json(&fs::read_to_string(dir.path().join("r.json.sums.json")).unwrap());
    assert_eq!(sums["edge_sums"].as_array().unwrap().len(), 27);
    assert_eq!(sums["nonedge_sums"].as_array().unwrap().len(), 9);
}

#[test]
fn tampered_file_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let rep = construct(Family::Nk3, 3).unwrap();
    let mut file = RepresentationFile::new(&GraphSpec::family(Family::Nk3, 3).unwrap(), &rep);
    file.ranks.swap(0, 3);
    fs::write(&path, file.to_json()).unwrap();
    let (code, out, _) = call(&["verify", "--rep", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(json(&out)["ok"], Value::Bool(false));
}

#[test]
fn certify_reports_violations() {
    // 2K3 with both triangles colored {1,1,1} at one threshold is not a valid
    // representation; the ranks put all six vertices in one clique.
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    let text = r#"{"format_version":1,
        "graph":{"kind":"disjoint_cliques","count":2,"clique_size":3},
        "basis":["1"],
        "ranks":[["1/1"],["1/1"],["1/1"],["1/1"],["1/1"],["1/1"]],
        "thresholds":[["0/1"]]}"#;
    fs::write(&path, text).unwrap();
    let p = path.to_str().unwrap();
    let (code, out, _) = call(&["certify", "--rep", p]);
    assert_eq!(code, 1);
    let (graph, rep) = parse_representation(text).unwrap();
    let expected = certify_all(&ColorTable::from_representation(&rep, &graph).unwrap(), &graph).unwrap();
    assert_eq!(out.lines().count(), expected.len());
    assert!(out.contains("SAME_COLOR_PAIR"));
    let (code, out, _) = call(&["certify", "--rep", p, "--check", "missing-half-triangle"]);
    assert_eq!((code, out.as_str()), (0, ""));
}

#[test]
fn theta_outputs() {
    let (code, out, _) = call(&["theta", "--family", "knx4", "--n", "3"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!((v["theta"].as_u64(), v["m"].as_u64()), (Some(4), Some(2)));
    assert_eq!(v["regime"], "boundary");
    let (code, out, _) = call(&["theta", "--table", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "n\tnk3\tknx3\tnk4\tknx4\n1\t1\t-\t1\t-\n2\t3\t2\t3\t2\n3\t5\t4\t5\t4\n");
    let (code, out, _) = call(&["--format", "tsv", "theta", "--family", "nk3", "--n", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out, "family\tn\ttheta\tregime\tm\nnk3\t5\t7\tboundary\t4\n");
    let (code, _, err) = call(&["theta", "--family", "knx3", "--n", "1"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:"));
}

#[test]
fn oracle_outputs() {
    let (code, out, _) = call(&["oracle", "--family", "nk3", "--n", "2", "--k", "2"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["answer"], "no");
    assert_eq!(v["assignments_checked"], 512);

    let (code, out, _) = call(&["oracle", "--graph", "multipartite:3,3", "--max-k", "3", "--deterministic"]);
    assert_eq!(code, 0);
    let v = json(&out);
    assert_eq!(v["theta"], 2);
    let witness = serde_json::to_string(&v["witness"]).unwrap();
    let (graph, rep) = parse_representation(&witness).unwrap();
    assert!(multithreshold::graphs::verify(&rep, &graph).unwrap().ok);

    let (code, out, _) = call(&["oracle", "--graph", "nk4:3", "--k", "3", "--budget", "1000"]);
    assert_eq!(code, 3);
    assert_eq!(json(&out)["answer"], "unknown");
}

#[test]
fn oracle_reads_graph_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    fs::write(&path, r#"{"kind":"explicit","vertex_count":4,"edges":[[0,1],[1,2],[2,3]]}"#).unwrap();
    let (code, out, _) = call(&["oracle", "--graph", path.to_str().unwrap(), "--max-k", "2", "--no-prune"]);
    assert_eq!(code, 0);
    assert_eq!(json(&out)["theta"], 2);
}

#[test]
fn usage_errors() {
    for args in [
        &["construct", "--family", "nk5", "--n", "2"][..],
        &["construct", "--family", "nk3"],
        &["theta", "--family", "nk3", "--n", "2", "--table", "4"],
        &["oracle", "--graph", "nk3:2"],
        &["oracle", "--graph", "nk3:2", "--k", "1", "--bogus"],
        &["verify", "--rep", "/nonexistent/r.json"],
        &["frobnicate"],
        &[],
    ] {
        let (code, out, err) = call(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("construct"));
}
