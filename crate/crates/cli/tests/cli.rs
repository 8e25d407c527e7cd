use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn quandle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quandle")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

fn table(file: &str) -> serde_json::Value {
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(file).unwrap()).unwrap();
    v["table"].clone()
}

#[test]
fn construct_aknn_has_twelve_points() {
    let dir = TempDir::new().unwrap();
    let out_file = path(&dir, "a.json");
    let out = quandle(&["construct", "aknn", "2", "4", "--out", &out_file]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("12 points"));
    assert_eq!(table(&out_file).as_array().unwrap().len(), 12);
}

#[test]
fn construct_dihedral_one_is_trivial_one() {
    let out = quandle(&["construct", "dihedral", "1"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["table"], serde_json::json!([[0]]));
}

#[test]
fn construct_graph_quandle_of_k2() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "k2.json", r#"{"vertices":2,"edges":[[0,1]]}"#);
    let out_file = path(&dir, "q.json");
    assert_eq!(code(&quandle(&["construct", "graph", &g, "--out", &out_file])), 0);
    assert_eq!(table(&out_file), serde_json::json!([[0, 1, 3, 2], [0, 1, 3, 2], [1, 0, 2, 3], [1, 0, 2, 3]]));
}

#[test]
fn construct_rejects_bad_parameters() {
    assert_eq!(code(&quandle(&["construct", "dihedral", "0"])), 2);
    assert_eq!(code(&quandle(&["construct", "aknn", "3", "2"])), 2);
    assert_eq!(code(&quandle(&["construct", "frobnicate", "2"])), 2);
}

#[test]
fn construct_torus_and_extension() {
    let dir = TempDir::new().unwrap();
    let torus = path(&dir, "t.json");
    assert_eq!(code(&quandle(&["construct", "torus", "3", "3", "--out", &torus])), 0);
    assert_eq!(table(&torus).as_array().unwrap().len(), 9);

    let base = path(&dir, "base.json");
    assert_eq!(code(&quandle(&["construct", "trivial", "2", "--out", &base])), 0);
    let phi = write(&dir, "phi.json", r#"{"size":2,"modulus":2,"values":[[0,1],[1,0]]}"#);
    let ext = path(&dir, "ext.json");
    assert_eq!(code(&quandle(&["construct", "extension", &base, &phi, "--out", &ext])), 0);
    assert_eq!(table(&ext), serde_json::json!([[0, 1, 3, 2], [0, 1, 3, 2], [1, 0, 2, 3], [1, 0, 2, 3]]));

    let bad = write(&dir, "bad.json", r#"{"size":2,"modulus":2,"values":[[1,1],[1,0]]}"#);
    assert_eq!(code(&quandle(&["construct", "extension", &base, &bad])), 2);
}

#[test]
fn check_exit_codes() {
    let dir = TempDir::new().unwrap();
    let c5 = write(&dir, "c5.json", r#"{"vertices":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#);
    let p3 = write(&dir, "p3.json", r#"{"vertices":3,"edges":[[0,1],[1,2]]}"#);
    let qc5 = path(&dir, "qc5.json");
    let qp3 = path(&dir, "qp3.json");
    assert_eq!(code(&quandle(&["from-graph", &c5, "--out", &qc5])), 0);
    assert_eq!(code(&quandle(&["from-graph", &p3, "--out", &qp3])), 0);

    assert_eq!(code(&quandle(&["check", &qc5, "--props", "homogeneous"])), 0);
    assert_eq!(code(&quandle(&["check", &qp3, "--props", "homogeneous"])), 1);
    assert_eq!(code(&quandle(&["check", &qc5, "--props", "crossed,involutive,connected"])), 1);
    assert_eq!(code(&quandle(&["check", &qc5, "--props", "shiny"])), 2);

    let malformed = write(&dir, "bad.json", "{\"size\": 2, \"table\": [[0,");
    assert_eq!(code(&quandle(&["check", &malformed])), 2);
    let missing = dir.path().join("missing.json");
    assert_eq!(code(&quandle(&["check", missing.to_str().unwrap()])), 2);
}

#[test]
fn check_json_report_is_stable() {
    let dir = TempDir::new().unwrap();
    let d3 = path(&dir, "d3.json");
    assert_eq!(code(&quandle(&["construct", "dihedral", "3", "--out", &d3])), 0);
    let first = stdout(&quandle(&["--json", "check", &d3]));
    let second = stdout(&quandle(&["--json", "check", &d3]));
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["connected"], true);
    assert_eq!(v["abelian_inn"], false);
    assert_eq!(v["witnesses"]["abelian_inn"], serde_json::json!([0, 1]));
}

#[test]
fn check_flags_non_quandle_tables() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "nq.json", r#"{"size":2,"table":[[1,0],[0,1]],"unchecked":true}"#);
    let out = quandle(&["check", &f]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("not a quandle"));
    let strict = write(&dir, "strict.json", r#"{"size":2,"table":[[1,0],[0,1]]}"#);
    assert_eq!(code(&quandle(&["check", &strict])), 2);
}

#[test]
fn to_graph_reproduces_the_octahedron() {
    let dir = TempDir::new().unwrap();
    let a = path(&dir, "a.json");
    let dot = path(&dir, "a.dot");
    assert_eq!(code(&quandle(&["construct", "aknn", "2", "4", "--out", &a])), 0);
    let out = quandle(&["to-graph", &a, "--dot", &dot]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph {\n"));
    assert_eq!(text.matches(" -- ").count(), 12);
    assert_eq!(text.matches("[label=").count(), 6);

    let again = path(&dir, "b.dot");
    assert_eq!(code(&quandle(&["to-graph", &a, "--dot", &again])), 0);
    assert_eq!(text, fs::read_to_string(&again).unwrap());
}

#[test]
fn to_graph_rejects_singleton_components() {
    let dir = TempDir::new().unwrap();
    let t = path(&dir, "t.json");
    assert_eq!(code(&quandle(&["construct", "trivial", "2", "--out", &t])), 0);
    let out = quandle(&["to-graph", &t]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("[0]"));
}

#[test]
fn from_graph_of_empty_graph_is_trivial() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "e3.json", r#"{"vertices":3,"edges":[]}"#);
    let out = quandle(&["from-graph", &g]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let expected: Vec<Vec<usize>> = vec![(0..6).collect(); 6];
    assert_eq!(v["table"], serde_json::json!(expected));
}

#[test]
fn graph_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.json", r#"{"vertices":4,"edges":[[0,1],[1,2],[2,3]]}"#);
    let q = path(&dir, "q.json");
    let back = path(&dir, "back.json");
    assert_eq!(code(&quandle(&["from-graph", &g, "--out", &q])), 0);
    assert_eq!(code(&quandle(&["to-graph", &q, "--out", &back])), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(Path::new(&back)).unwrap()).unwrap();
    assert_eq!(v["edges"], serde_json::json!([[0, 1], [1, 2], [2, 3]]));
}

#[test]
fn census_rows_and_limits() {
    let out = quandle(&["census", "--max-order", "4"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0], ["1", "1", "1", "D_1"]);
    assert_eq!(rows[2], ["3", "3", "1", "D_3"]);
    assert_eq!(rows[3], ["4", "7", "0"]);

    let out = quandle(&["--json", "census", "--max-order", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[2]["classes"], 3);
    assert_eq!(v[2]["survivors"][0]["torus"], serde_json::json!([3]));

    assert_eq!(code(&quandle(&["census", "--max-order", "7"])), 2);
    assert_eq!(code(&quandle(&["census", "--max-order", "0"])), 2);
}
