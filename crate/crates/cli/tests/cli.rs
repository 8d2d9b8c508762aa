use std::path::Path;
use std::process::{Command, Output};

fn ehlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ehlab")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

#[test]
fn construct_then_hom() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    let out = ehlab(&["construct", "--kind", "gnp", "--n", "14", "--p", "1/2", "--seed", "5", "--out", path_str(&g)]);
    assert!(out.status.success());
    let first = std::fs::read_to_string(&g).unwrap();
    ehlab(&["construct", "--kind", "gnp", "--n", "14", "--p", "1/2", "--seed", "5", "--out", path_str(&g)]);
    assert_eq!(std::fs::read_to_string(&g).unwrap(), first, "construct is deterministic");

    let out = ehlab(&["hom", "--input", path_str(&g)]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,hom,kind,vertices,validated"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[0], "14");
    assert_eq!(row[3].split(' ').count().to_string(), row[1]);
    assert_eq!(row[4], "true");
}

#[test]
fn hom_json_and_counts() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c5.txt");
    std::fs::write(&g, "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let out = ehlab(&["hom", "--input", path_str(&g), "--format", "json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["kind"], "hom");
    assert_eq!(report["rows"][0][1]["integer"], "2");

    // C5 has five edges, no triangles and no independent triples
    let out = ehlab(&["hom", "--input", path_str(&g), "--count", "2"]);
    assert_eq!(stdout(&out).lines().nth(1), Some("5,2,5,5,10"));
    let out = ehlab(&["hom", "--input", path_str(&g), "--count", "3"]);
    assert_eq!(stdout(&out).lines().nth(1), Some("5,3,0,0,0"));
}

#[test]
fn tournament_dist_on_cyclic_triangle() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.txt");
    std::fs::write(&t, "3\n0 1 0\n0 0 1\n1 0 0\n").unwrap();
    let out = ehlab(&["tournament", "dist", "--input", path_str(&t), "--eps", "1/3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[..3], &["3", "1", "1"]);
    assert_eq!(row[5], "true");
}

#[test]
fn params_chain_and_errors() {
    let out = ehlab(&["params", "--eps", "1/128", "--h", "3,4,5,6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.starts_with("graph,1/128,const:2,") && l.ends_with(",pass")));
    assert!(text.contains(",14188600,"));

    let out = ehlab(&["params", "--eps", "1/2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ehlab(&["params", "--eps", "1/2", "--allow-any-eps", "--h", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("exploratory"));
    let out = ehlab(&["params", "--eps", "1/128", "--f", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn containers_verify_modes() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.txt");
    ehlab(&["construct", "--kind", "gnp", "--n", "9", "--p", "1/3", "--seed", "11", "--out", path_str(&g)]);
    let out = ehlab(&["containers", "verify", "--input", path_str(&g), "--eps", "1/2", "--u", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("n,r,eps,u,ell,k,precondition,count,bound,within_bound\n"));

    let out = ehlab(&["containers", "verify", "--sweep", "4", "--eps", "1/2,1", "--u", "1,2", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["kind"], "container-sweep");
    assert!(!report["rows"].as_array().unwrap().is_empty());

    // a non-independent set is an input error
    let k3 = dir.path().join("k3.txt");
    std::fs::write(&k3, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let out = ehlab(&["containers", "verify", "--input", path_str(&k3), "--set", "0,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn experiment_run_writes_reproducible_reports() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("c.json");
    std::fs::write(&config, r#"{"kind": "count-lower-bound", "generator": {"p": "1/20"}, "grid": {"n": [20], "t": [5], "k": [3]}, "seeds": [1, 2]}"#).unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    assert!(ehlab(&["experiment", "run", path_str(&config), "--out", path_str(&a), "--threads", "1"]).status.success());
    assert!(ehlab(&["experiment", "run", path_str(&config), "--out", path_str(&b), "--threads", "2"]).status.success());
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("experiment,instance,"));
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(ehlab(&["hom", "--input", "/nonexistent/g.txt"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("big.txt");
    ehlab(&["construct", "--kind", "gnp", "--n", "30", "--out", path_str(&g)]);
    // exact ε-homogeneous search is capped well below 30 vertices
    assert_eq!(ehlab(&["hom", "--input", path_str(&g), "--eps", "1/4"]).status.code(), Some(3));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"kind": "nope"}"#).unwrap();
    assert_eq!(ehlab(&["experiment", "run", path_str(&bad)]).status.code(), Some(2));
}
