//! End-to-end tests of the `irr` binary: exit codes, report shapes,
//! format agreement, and determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn irr() -> Command {
    Command::new(env!("CARGO_BIN_EXE_irr"))
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("irr-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

fn json_of(output: &Output) -> serde_json::Value {
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON report")
}

#[test]
fn check_irredundant_bipartite_exits_zero() {
    let construct = irr().args(["construct", "bipartite", "3", "4"]).output().unwrap();
    assert!(construct.status.success());
    let doc = String::from_utf8(construct.stdout).unwrap();
    assert_eq!(doc.lines().count(), 13); // header + 12 edges
    let path = write_temp("k34", &doc);

    let output = irr().args(["check"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = json_of(&output);
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "check");
    assert_eq!(v["input_summary"]["n"], 7);
    assert_eq!(v["input_summary"]["edge_count"], 12);
    assert_eq!(v["result"]["is_irredundant"], true);
}

#[test]
fn check_bad_edge_exits_one_with_witness() {
    let path = write_temp("transitive", "n 3\n0 1\n1 2\n0 2\n");
    let output = irr().args(["check"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let v = json_of(&output);
    assert_eq!(v["result"]["is_irredundant"], false);
    assert_eq!(v["result"]["bad_edges"][0]["edge"], serde_json::json!([0, 2]));
    assert_eq!(
        v["result"]["bad_edges"][0]["alternate_path"],
        serde_json::json!([0, 1, 2])
    );
}

#[test]
fn check_out_of_range_exits_two() {
    let path = write_temp("range", "n 2\n0 2\n");
    let output = irr().args(["check"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
    let diag = String::from_utf8(output.stderr).unwrap();
    assert!(diag.contains("line 2"), "diagnostic: {diag}");
    assert!(diag.contains("out of range"), "diagnostic: {diag}");
}

#[test]
fn reduce_double_tree_contracts_to_a_point() {
    let construct = irr()
        .args(["construct", "double-tree", "--path", "4"])
        .output()
        .unwrap();
    assert!(construct.status.success());
    let path = write_temp("dt4", &String::from_utf8(construct.stdout).unwrap());
    let output = irr().args(["reduce"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = json_of(&output);
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 3);
    assert_eq!(v["result"]["final_graph"]["n"], 1);
    assert_eq!(v["result"]["final_graph"]["edge_count"], 0);
}

#[test]
fn reduce_bipartite_has_empty_trace() {
    let construct = irr().args(["construct", "bipartite", "3", "4"]).output().unwrap();
    let path = write_temp("k34r", &String::from_utf8(construct.stdout).unwrap());
    let output = irr().args(["reduce"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = json_of(&output);
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 0);
}

#[test]
fn reduce_three_cycle_contracts_triangle() {
    let path = write_temp("c3", "n 3\n0 1\n1 2\n2 0\n");
    let output = irr().args(["reduce"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = json_of(&output);
    let steps = v["result"]["steps"].as_array().unwrap();
    assert_eq!(steps.len(), 1);
    assert_eq!(steps[0]["kind"], "Triangle");
}

#[test]
fn reduce_rejects_redundant_input() {
    let path = write_temp("badr", "n 3\n0 1\n1 2\n0 2\n");
    let output = irr().args(["reduce"]).arg(&path).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let v = json_of(&output);
    assert_eq!(v["result"]["is_irredundant"], false);
}

#[test]
fn construct_errors_exit_two() {
    let output = irr().args(["construct", "bipartite", "0", "4"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));

    let output = irr().args(["construct", "double-tree"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn construct_double_tree_path_7() {
    let output = irr()
        .args(["construct", "double-tree", "--path", "7"])
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc = String::from_utf8(output.stdout).unwrap();
    assert_eq!(doc.lines().count(), 13); // header + 12 edges
    assert!(doc.starts_with("n 7\n"));
}

#[test]
fn construct_random_is_seed_deterministic() {
    let run = |seed: &str| {
        irr()
            .args(["construct", "double-tree", "--random", "9", "--seed", seed])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("7"), run("7"));
    assert_ne!(run("7"), run("8"));
}

#[test]
fn construct_from_tree_file() {
    let path = write_temp("star", "n 4\n0 1\n0 2\n0 3\n");
    let output = irr()
        .args(["construct", "double-tree", "--tree"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(output.status.success());
    let doc = String::from_utf8(output.stdout).unwrap();
    assert_eq!(doc, "n 4\n0 1\n0 2\n0 3\n1 0\n2 0\n3 0\n");
}

#[test]
fn search_five_reports_double_trees() {
    let output = irr().args(["search", "5"]).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = json_of(&output);
    assert_eq!(v["result"]["f_value"], 8);
    assert_eq!(v["result"]["extremal_class_count"], 3);
    assert_eq!(v["result"]["partial"], false);
}

#[test]
fn search_nine_exits_two() {
    let output = irr().args(["search", "9"]).output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn search_zero_budget_exits_three() {
    let output = irr().args(["search", "6", "--budget", "0s"]).output().unwrap();
    assert_eq!(output.status.code(), Some(3));
    let v = json_of(&output);
    assert_eq!(v["result"]["partial"], true);
}

#[test]
fn verify_recurrence_passes() {
    let output = irr()
        .args(["verify", "recurrence", "--max", "100"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = json_of(&output);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["result"]["values"][6], 12); // n = 7
    assert_eq!(v["result"]["values"][7], 16); // n = 8
}

#[test]
fn verify_theorem_small_passes() {
    let output = irr()
        .args(["verify", "theorem", "--max-n", "4"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v = json_of(&output);
    assert_eq!(v["result"]["pass"], true);
}

#[test]
fn verify_lemma_simple_caps_exit_two() {
    let output = irr()
        .args(["verify", "lemma-simple", "--parts", "5", "5"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn dot_and_edge_list_agree() {
    let dot = write_temp("deps.dot", "digraph deps {\n  a -> b;\n  b -> c;\n  a -> c;\n}\n");
    let el = write_temp("deps.el", "n 3\n0 1\n1 2\n0 2\n");
    let from_dot = irr()
        .args(["check", "--format", "dot"])
        .arg(&dot)
        .output()
        .unwrap();
    let from_el = irr().args(["check"]).arg(&el).output().unwrap();
    assert_eq!(from_dot.status.code(), from_el.status.code());
    let (a, b) = (json_of(&from_dot), json_of(&from_el));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["input_summary"], b["input_summary"]);
}

#[test]
fn construct_check_reduce_pipeline_is_deterministic() {
    // Byte-identical modulo the timing envelope, which is wall-clock.
    let strip_timing = |v: &mut serde_json::Value| {
        v.as_object_mut().unwrap().remove("timing");
    };
    let run_pipeline = || {
        let doc = irr()
            .args(["construct", "double-tree", "--random", "7", "--seed", "11"])
            .output()
            .unwrap();
        let path = write_temp("pipe", &String::from_utf8(doc.stdout).unwrap());
        let mut check = json_of(&irr().args(["check"]).arg(&path).output().unwrap());
        let mut reduce = json_of(&irr().args(["reduce"]).arg(&path).output().unwrap());
        strip_timing(&mut check);
        strip_timing(&mut reduce);
        (check, reduce)
    };
    assert_eq!(run_pipeline(), run_pipeline());
}

#[test]
fn edge_list_round_trips_through_reports() {
    let output = irr().args(["search", "4"]).output().unwrap();
    let v = json_of(&output);
    for rep in v["result"]["extremal_representatives"].as_array().unwrap() {
        let doc = rep["edge_list"].as_str().unwrap();
        let path = write_temp("rt", doc);
        let check = irr().args(["check"]).arg(&path).output().unwrap();
        assert_eq!(check.status.code(), Some(0));
        let cv = json_of(&check);
        assert_eq!(cv["input_summary"]["edge_count"], rep["edge_count"]);
    }
}
