use std::process::{Command, Output};

use serde_json::Value;

fn quadperm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadperm")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = quadperm(&full);
    serde_json::from_str(&stdout(&out)).expect("valid JSON")
}

#[test]
fn stratum_line() {
    let out = quadperm(&["stratum", "1 1 2 / 3 2 3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Q(-1,-1,2) g=1 dim=3");
}

#[test]
fn json_documents_carry_the_schema() {
    let doc = json(&["stratum", "1 1 2 / 3 2 3"]);
    assert_eq!(doc["schema"], "1");
    assert_eq!(doc["command"], "stratum");
    assert_eq!(doc["result"]["genus"], 1);
    assert_eq!(doc["result"]["pattern"], "Q(-1,-1,2)");
}

#[test]
fn bad_input_exits_with_two() {
    for args in [&["stratum", "1 2 / 2"][..], &["enumerate", "--pattern", "Q(1)"], &["rep", "pi1a", "3", "3", "9"]] {
        let out = quadperm(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn enumerates_the_stratum_of_a_single_zero() {
    let out = quadperm(&["enumerate", "--pattern", "8"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().filter(|l| l.contains('/')).count(), 7);
    let swapless = quadperm(&["--sym", "relabel,rotate", "enumerate", "--pattern", "8"]);
    assert_eq!(stdout(&swapless).lines().filter(|l| l.contains('/')).count(), 11);
}

#[test]
fn red_condition_lists_the_decomposition() {
    let text = stdout(&quadperm(&["check", "red", "1 2 2 3 3 1 / 0 0"]));
    assert!(text.starts_with("Violated"));
    assert!(text.contains("Y1''   = (2 2 3 3)"));
}

#[test]
fn output_is_deterministic() {
    for args in [&["enumerate", "--pattern", "-1,5"][..], &["--seed", "7", "decompose", "1 2 1 2 3 / 3 4 5 4 5"]] {
        assert_eq!(json(args), json(args), "{args:?}");
    }
}

#[test]
fn suite_selection_and_exit_status() {
    let doc = json(&["reproduce-appendix", "--only", "q8"]);
    let checks = doc["result"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 3);
    assert!(checks.iter().all(|c| c["check_id"].as_str().unwrap().starts_with("q8.")));

    let passing = quadperm(&["reproduce-appendix", "--only", "1"]);
    assert_eq!(passing.status.code(), Some(0));
    let failing = quadperm(&["reproduce-appendix", "--only", "q8.moves"]);
    assert_eq!(failing.status.code(), Some(1));
    let unknown = quadperm(&["reproduce-appendix", "--only", "nothing"]);
    assert_eq!(unknown.status.code(), Some(2));
}
