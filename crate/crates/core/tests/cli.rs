use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tilecomplex")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build_into(dir: &TempDir, level: u32) -> String {
    let out = dir.path().join(format!("c{level}.json"));
    let o = run(&["build", "--level", &level.to_string(), "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    out.to_str().unwrap().to_string()
}

fn document(path: &str) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn build_writes_documents() {
    let dir = TempDir::new().unwrap();
    let d2 = document(&build_into(&dir, 2));
    assert_eq!(d2["format_version"], 1);
    assert_eq!(d2["vertices"].as_array().unwrap().len(), 11);
    let d3 = document(&build_into(&dir, 3));
    assert!(d3["pasting_log"].as_array().unwrap().is_empty());
    let d4 = document(&build_into(&dir, 4));
    assert!(!d4["pasting_log"].as_array().unwrap().is_empty());
    let ids: Vec<u64> = d4["tiles"].as_array().unwrap().iter().map(|t| t["id"].as_u64().unwrap()).collect();
    assert!(ids.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn bad_levels_and_rules_are_usage_errors() {
    assert_eq!(run(&["build", "--level", "0"]).status.code(), Some(2));
    assert_eq!(run(&["build"]).status.code(), Some(2));
    let dir = TempDir::new().unwrap();
    let mut rules = serde_json::to_value(tilecomplex::RuleTable::default()).unwrap();
    rules["children"][0][1] = rules["children"][0][2].clone();
    let path = dir.path().join("rules.json");
    std::fs::write(&path, rules.to_string()).unwrap();
    let o = run(&["build", "--level", "2", "--rules", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid rule table"));
}

#[test]
fn check_passes_on_level_four_and_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let doc = build_into(&dir, 4);
    let a = run(&["check", &doc, "--seed", "3"]);
    assert_eq!(a.status.code(), Some(0));
    let report = stdout(&a);
    assert!(!report.contains("verdict fail"));
    assert_eq!(report.matches("lemma L").count(), 20);
    let b = run(&["check", &doc, "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["--sequential", "check", "--level", "4", "--seed", "3"]);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn corrupted_document_is_a_structural_error() {
    let dir = TempDir::new().unwrap();
    let doc = build_into(&dir, 2);
    let mut d = document(&doc);
    let edges = d["edges"].as_array_mut().unwrap();
    let leaf = edges.iter_mut().find(|e| e["halves"].is_null()).unwrap();
    leaf["endpoints"][1] = serde_json::json!(leaf["endpoints"][1].as_u64().unwrap() + 5);
    let bad = Path::new(&doc).with_file_name("bad.json");
    std::fs::write(&bad, d.to_string()).unwrap();
    let o = run(&["check", bad.to_str().unwrap(), "--lemmas", "L2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("structural"));
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn dot_export() {
    let o = run(&["export-dot", "--level", "2"]);
    let dot = stdout(&o);
    assert_eq!(dot.matches("graph ").count(), 1);
    assert_eq!(dot.matches("[label=").count(), 11);
    assert_eq!(dot.matches(" -- ").count(), 16);
    assert_eq!(run(&["export-dot", "--level", "2", "--plane", "p1"]).status.code(), Some(2));

    let dir = TempDir::new().unwrap();
    let doc = build_into(&dir, 4);
    let pastings = document(&doc)["pasting_log"].as_array().unwrap().len();
    let all = stdout(&run(&["export-dot", &doc]));
    assert_eq!(all.matches("graph ").count(), 1 + pastings);
    assert_eq!(all, stdout(&run(&["export-dot", &doc])));
    let one = stdout(&run(&["export-dot", &doc, "--plane", "1"]));
    assert_eq!(one.matches("[label=").count(), 11);
}

#[test]
fn geodesics_and_reduce() {
    let o = run(&["geodesics", "--level", "3", "--pairs", "4", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let tsv = stdout(&o);
    assert!(tsv.starts_with("a\tb\tD\tR\tR/D\n"));
    assert_eq!(tsv.lines().filter(|l| !l.starts_with('#')).count(), 5);

    let c = tilecomplex::build(2).unwrap();
    let x = c.tile_points(c.root()).unwrap();
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("path.txt");
    // Upper-left corner, top midpoint, A, left midpoint: two sides of one tile and one more step.
    std::fs::write(&path, format!("{} {} {} {}", x[0].0, x[4].0, x[8].0, x[7].0)).unwrap();
    let o = run(&["reduce", "--level", "2", "--path", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# reduced"));
    // Two sides of the whole tile form a geodesic.
    std::fs::write(&path, format!("{} {} {} {} {}", x[0].0, x[4].0, x[1].0, x[5].0, x[2].0)).unwrap();
    let o = run(&["reduce", "--level", "2", "--path", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("# irreducible"));
}
