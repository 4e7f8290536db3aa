use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cuttree::formats::{parse_network, FlowJson, TreeJson};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn cuttree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cuttree")).args(args).env_remove("CUTTREE_ORACLE_LIMIT").output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn maxflow_prints_value_and_writes_flow() {
    let input = fixture("flow_example.json");
    let dir = tempfile::tempdir().unwrap();
    let flow_path = dir.path().join("flow.json");
    let out = cuttree(&["maxflow", path_str(&input), "-s", "g", "-t", "w", "-o", flow_path.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "7");

    let net = parse_network(&std::fs::read_to_string(&input).unwrap()).unwrap();
    let flow: FlowJson = serde_json::from_str(&std::fs::read_to_string(&flow_path).unwrap()).unwrap();
    assert_eq!(flow.value, 7);
    let f = flow.to_flow(&net, "g", "w").unwrap();
    assert!(cuttree::flow::verify_flow(&net, &f));
}

#[test]
fn tree_of_path_has_three_nodes() {
    let out = cuttree(&["tree", path_str(&fixture("path.json"))]);
    assert!(out.status.success());
    let tree: TreeJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(tree.nodes.len(), 3);
    assert_eq!(tree.edges.len(), 2);
    assert!(tree.edges.iter().all(|e| e.capacity == 1));
}

#[test]
fn tree_json_round_trips_byte_for_byte() {
    for name in ["path.json", "flow_example.json", "tree_example.json", "diamond.dimacs"] {
        let text = stdout(&cuttree(&["tree", path_str(&fixture(name))]));
        let parsed: TreeJson = serde_json::from_str(&text).unwrap();
        let again = TreeJson::from_tree(&parsed.to_tree().unwrap());
        assert_eq!(serde_json::to_string_pretty(&again).unwrap() + "\n", text, "{name}");
    }
}

#[test]
fn dot_marks_the_lonely_node() {
    let out = cuttree(&["--format", "dot", "tree", path_str(&fixture("tree_example.json"))]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph"));
    assert_eq!(text.matches("shape=point").count(), 1);
}

#[test]
fn ghtree_has_one_node_per_vertex() {
    let out = cuttree(&["ghtree", path_str(&fixture("tree_example.json"))]);
    let tree: TreeJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(tree.nodes.len(), 22);
    assert!(tree.nodes.iter().all(|n| n.image_of.len() == 1));
}

#[test]
fn mincut_is_the_least_side() {
    let out = cuttree(&["mincut", path_str(&fixture("tree_example.json")), "-s", "u", "-t", "p"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["capacity"], 12);
    assert_eq!(v["side"], serde_json::json!(["q", "r", "s", "t", "u", "v", "w"]));
}

#[test]
fn strip_commands() {
    let ladder = fixture("ladder.json");
    let out = cuttree(&["strip", "sep", path_str(&ladder), "-x", "end:left", "-y", "end:right"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "2");
    let out = cuttree(&["strip", "sep", path_str(&ladder), "-x", "col:-1/a", "-y", "col:-1/b"]);
    assert_eq!(stdout(&out).trim(), "3");
    let out = cuttree(&["strip", "sep", path_str(&fixture("five_line.json")), "-x", "end:left", "-y", "end:right"]);
    assert_eq!(stdout(&out).trim(), "5");

    let out = cuttree(&["strip", "tree", path_str(&ladder), "-n", "2", "-w", "3"]);
    assert!(out.status.success());
    let tree: TreeJson = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(tree.ends.len(), 2);
    assert!(tree.ends.iter().all(|e| e.surrogate));
    assert_ne!(tree.ends[0].node, tree.ends[1].node);
}

#[test]
fn verify_passes_on_small_fixtures() {
    for name in ["path.json", "diamond.dimacs"] {
        let path = fixture(name);
        let out = cuttree(&["verify", path_str(&path)]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stdout(&out));
        assert!(!stdout(&out).contains("FAILED"));
    }
}

#[test]
fn input_errors_exit_one() {
    let path = fixture("path.json");
    let out = cuttree(&["maxflow", path_str(&path), "-s", "a", "-t", "nope"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("nope"));
    assert_eq!(cuttree(&["maxflow", path_str(&path), "-s", "a", "-t", "a"]).status.code(), Some(1));
    assert_eq!(cuttree(&["tree", "/no/such/file.json"]).status.code(), Some(1));
    assert_eq!(cuttree(&["verify", path_str(&fixture("tree_example.json"))]).status.code(), Some(1));
    assert_eq!(cuttree(&["frobnicate"]).status.code(), Some(1));

    let out = Command::new(env!("CARGO_BIN_EXE_cuttree"))
        .args(["verify", path_str(&fixture("flow_example.json"))])
        .env("CUTTREE_ORACLE_LIMIT", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = Command::new(env!("CARGO_BIN_EXE_cuttree"))
        .args(["verify", path_str(&fixture("flow_example.json"))])
        .env("CUTTREE_ORACLE_LIMIT", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn oracle_dump_lists_every_cut() {
    let out = cuttree(&["oracle", path_str(&fixture("diamond.dimacs"))]);
    let v: Vec<serde_json::Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.len(), 14);
    assert!(v.iter().all(|r| r["capacity"].as_u64().unwrap() > 0));
}
