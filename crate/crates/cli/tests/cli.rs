use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::NamedTempFile;

const WORKED: &str = r#"{"version":"1","vertices":[
    {"id":0,"weight":"1","degree":3},{"id":1,"weight":"1","degree":2},
    {"id":2,"weight":"1","degree":1},{"id":3,"weight":"2","degree":1},
    {"id":4,"weight":"3","degree":1}]}"#;

fn wh(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_wh"))
        .args(args)
        .env_remove("WH_ENUM_CAP")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.unwrap_or("").as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn file(content: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(content.as_bytes()).unwrap();
    f
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn tuple_json(weights: &[&str], degrees: &[usize]) -> String {
    let vertices: Vec<Value> = weights
        .iter()
        .zip(degrees)
        .enumerate()
        .map(|(i, (w, d))| serde_json::json!({"id": i, "weight": w, "degree": d}))
        .collect();
    serde_json::json!({"version": "1", "vertices": vertices}).to_string()
}

#[test]
fn build_reports_the_worked_example() {
    let input = file(WORKED);
    let out = wh(&["build", input.path().to_str().unwrap()], None);
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["metadata"]["vwwi"], "46");
    assert_eq!(doc["metadata"]["fvec"], serde_json::json!(["2"]));
    assert_eq!(doc["metadata"]["optimality_guaranteed"], true);
    assert_eq!(doc["edges"], serde_json::json!([[0, 1], [0, 3], [0, 4], [1, 2]]));
    assert!(doc["metadata"].get("star_sequence").is_none());
}

#[test]
fn build_trace_lists_the_stars() {
    let out = wh(&["build", "-", "--trace"], Some(WORKED));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    let stars = doc["metadata"]["star_sequence"].as_array().unwrap();
    assert_eq!(stars.len(), 2);
    assert_eq!(stars[0]["center"], 1);
    assert_eq!(stars[0]["leaves"], serde_json::json!([2]));
    assert_eq!(stars[1]["total_weight"], "8");
}

#[test]
fn star_tuple_gives_an_empty_fvec() {
    let out = wh(&["build", "-"], Some(&tuple_json(&["1", "1", "1", "1"], &[3, 1, 1, 1])));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["metadata"]["fvec"], serde_json::json!([]));
    assert_eq!(doc["metadata"]["vwwi"], "9");
}

#[test]
fn dot_and_edge_list_exports() {
    let dot = stdout(&wh(&["build", "-", "--format", "dot"], Some(WORKED)));
    assert!(dot.starts_with("graph huffman {"));
    assert!(dot.contains("  4 [label=\"4 (3)\"];"));
    assert!(dot.contains("  1 -- 2;"));
    let edges = stdout(&wh(&["build", "-", "--format", "edgelist"], Some(WORKED)));
    assert_eq!(edges, "# vwwi 46\n0 1\n0 3\n0 4\n1 2\n");
}

#[test]
fn degree_identity_violation_exits_2() {
    let out = wh(&["build", "-"], Some(&WORKED.replace(r#""degree":3"#, r#""degree":2"#)));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("degree identity violated: sum=7, required=8"));
}

#[test]
fn malformed_input_exits_2() {
    for bad in ["{", r#"{"version":"2","vertices":[]}"#, "[]"] {
        assert_eq!(wh(&["build", "-"], Some(bad)).status.code(), Some(2), "{bad}");
    }
    assert_eq!(wh(&["build", "/nonexistent/tuple.json"], None).status.code(), Some(2));
    assert_eq!(wh(&["frobnicate"], None).status.code(), Some(2));
}

#[test]
fn non_monotone_build_warns_but_succeeds() {
    let tuple = tuple_json(&["10", "16", "3", "17", "3", "13"], &[1, 1, 3, 2, 1, 2]);
    let out = wh(&["build", "-"], Some(&tuple));
    assert!(out.status.success());
    assert!(stderr(&out).contains("warning"));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["metadata"]["optimality_guaranteed"], false);
}

#[test]
fn build_output_evaluates_as_huffman() {
    let built = stdout(&wh(&["build", "-"], Some(WORKED)));
    let out = wh(&["eval", "-"], Some(&built));
    assert!(out.status.success());
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["vwwi"], "46");
    assert_eq!(report["vwwi_rooted"], "46");
    assert_eq!(report["is_huffman"], true);
    assert_eq!(report["is_proper"], true);
}

#[test]
fn eval_unit_path() {
    let out = wh(&["eval", "-"], Some("0 1\n1 2\n2 3\n"));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["wiener"], "10");
    assert_eq!(report["gutman"], "19");
    assert_eq!(report["vwwi"], "10");
    let pendent = wh(&["eval", "-", "--root", "0"], Some("0 1\n1 2\n2 3\n"));
    assert_eq!(pendent.status.code(), Some(2));
}

#[test]
fn eval_rejects_cycles_and_disconnected_input() {
    assert_eq!(wh(&["eval", "-"], Some("0 1\n1 2\n2 0\n")).status.code(), Some(2));
    assert_eq!(wh(&["eval", "-"], Some("0 1\n2 3\n")).status.code(), Some(2));
}

#[test]
fn verify_random_monotone_campaign_passes() {
    let out = wh(&["verify", "--random", "100", "--max-vertices", "8", "--seed", "7"], None);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.ends_with(" OK")).count(), 100);
    assert!(text.ends_with("summary: 100 passed, 0 failed, 0 over the enumeration cap, 0 non-monotone\n"));
}

#[test]
fn verify_tags_non_monotone_tuples() {
    let tuple = tuple_json(&["10", "16", "3", "17", "3", "13"], &[1, 1, 3, 2, 1, 2]);
    let out = wh(&["verify", "-"], Some(&tuple));
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("huffman=3126 optimum=3114"));
    assert!(text.contains("gap=12 NONMONOTONE"));
}

#[test]
fn verify_exits_4_over_the_cap() {
    let degrees = [4, 4, 4, 3, 3, 3, 2, 2, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1];
    let out = wh(&["verify", "-"], Some(&tuple_json(&["1"; 20], &degrees)));
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("CAP"));
}

#[test]
fn enumeration_cap_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_wh"))
        .args(["verify", "--random", "3", "--min-vertices", "8", "--seed", "1"])
        .env("WH_ENUM_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn counterexample_is_deterministic() {
    let first = wh(&["counterexample"], None);
    assert!(first.status.success());
    let report: Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(report["gap"], "12");
    assert_eq!(report["huffman_vwwi"], "3126");
    assert_eq!(report["oracle_min"], "3114");
    assert_eq!(wh(&["counterexample"], None).stdout, first.stdout);
}

#[test]
fn counterexample_with_four_vertices_exits_1() {
    let out = wh(&["counterexample", "--max-vertices", "4"], None);
    assert_eq!(out.status.code(), Some(1));
}
