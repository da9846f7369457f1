use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amalgamlab")).args(args).env_remove("AMALGAMLAB_CATALOG").output().unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("amalgamlab-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn show_psl2_11() {
    let (v, code) = json(&["catalog", "show", "PSL2_11@11"]);
    assert_eq!(code, 0);
    assert_eq!(v["degree"], 11);
    assert_eq!(v["stabiliser_iso"], "A5");
    assert_eq!(v["stabiliser_order"], 60);
}

#[test]
fn unknown_id_is_an_input_error() {
    let out = run(&["catalog", "show", "nonsense@3"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown catalog id"));
}

#[test]
fn affine_degree_81_lists_the_extraspecial_rows() {
    let (v, _) = json(&["catalog", "list", "--family", "affine", "--degree", "81"]);
    let rows = v.as_array().unwrap();
    let extraspecial: Vec<&Value> = rows.iter().filter(|e| e["stabiliser"].as_str().unwrap().contains("2^(1+4)")).collect();
    assert_eq!(extraspecial.len(), 5);
    assert!(extraspecial.iter().all(|e| e["construction"]["kind"] == "descriptor-only"));
}

#[test]
fn validate_constructed_entries() {
    let out = run(&["catalog", "validate"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn missing_catalog_dir_is_an_error() {
    let out = run(&["--catalog-dir", "/nonexistent/amalgamlab", "catalog", "list"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn build_cayley_then_check() {
    let dir = scratch("cayley");
    let (v, code) = json(&["build", "cayley", "--H", "S3", "--p", "5", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["vertices"], 50);
    assert_eq!(v["valencies"], serde_json::json!([3]));
    let graph = dir.join("cayley-S3-5.graph.json");
    let (c, code) = json(&["check", graph.to_str().unwrap(), "--s", "3"]);
    assert_eq!(code, 0);
    assert_eq!(c["arcs"][0]["s"], 2);
    assert_eq!(c["passed"], true);
}

#[test]
fn complete_graph_under_a8_is_exactly_2_arc_transitive() {
    let dir = scratch("k8");
    let out = run(&["build", "complete", "A8@8", "--out", dir.to_str().unwrap(), "--name", "k8"]);
    assert!(out.status.success());
    let (c, code) = json(&["check", dir.join("k8.graph.json").to_str().unwrap(), "--s", "3"]);
    assert_eq!(code, 0);
    assert_eq!(c["arcs"][0]["s"], 2);
    assert_eq!(c["arcs"][0]["orbit_counts"], serde_json::json!([1, 1, 2]));
}

#[test]
fn dot_output_of_a_cycle() {
    let dir = scratch("dot");
    let out = run(&["--format", "dot", "build", "cycle", "5", "--out", dir.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.matches(" -- ").count(), 5);
    let out = run(&["--format", "dot", "catalog", "show", "A5@5"]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn classify_is_deterministic_across_thread_counts() {
    let one = run(&["--format", "json", "classify", "--threads", "1"]);
    let four = run(&["--format", "json", "classify", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
    let v: Value = serde_json::from_slice(&one.stdout).unwrap();
    let rows: Vec<u64> = v["rows"].as_array().unwrap().iter().map(|r| r["row"].as_u64().unwrap()).collect();
    assert!(rows.contains(&1) && rows.contains(&16));
    assert_eq!(one.status.code(), Some(if v["passed"] == true { 0 } else { 2 }));
}

#[test]
fn classify_against_a_custom_table() {
    let dir = scratch("golden");
    std::fs::create_dir_all(&dir).unwrap();
    let table = amalgamlab::golden::table1();
    let rows: Vec<_> = table.rows.into_iter().filter(|r| [1, 5, 11].contains(&r.row)).collect();
    let path = dir.join("subset.json");
    std::fs::write(&path, serde_json::to_string(&amalgamlab::golden::Table1 { rows }).unwrap()).unwrap();
    let (v, code) = json(&["classify", "--golden", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    assert!(v["rows"].as_array().unwrap().iter().all(|r| r["columns_match"] == true));
}

#[test]
fn three_arc_includes_a9() {
    let (v, _) = json(&["three-arc"]);
    let triples = v["report"]["triples"].as_array().unwrap();
    assert!(triples.iter().any(|t| t["left_group"] == "A9" && t["right_order"] == 322560 && t["shared"]["label"] == "A8"));
    assert!(triples.iter().any(|t| t["regular"] == true && t["left_group"] == "A7"));
}
