use std::process::{Command, Output};

fn tbraid(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tbraid"))
        .args(args)
        .env_remove("TBRAID_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn braid_prints_standard_word() {
    let out = tbraid(&["braid", "T((2,3))"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "n=2\n1 1 1\n");

    let out = tbraid(&["braid", "T((2,2),(3,2))"]);
    assert_eq!(stdout(&out), "n=3\n1 1 1 2 1 2\n");
}

#[test]
fn malformed_spec_exits_with_input_error() {
    let out = tbraid(&["braid", "T((3,1),(2,2))"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("parse error"), "{err}");
}

#[test]
fn fulltwist_certificate_with_bracket_oracle() {
    let out = tbraid(&["--verify", "full", "fulltwist", "T((2,2),(3,2))"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bracket_oracle"]["equal"], true);
    assert_eq!(v["fulltwist_witness"]["contains_full_twist"], true);
}

#[test]
fn satellite_matches_prediction() {
    let out = tbraid(&["satellite", "--a", "2", "--b", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let json_line = text.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(json_line).unwrap();
    assert_eq!(v["crossings"], 13);
    assert_eq!(v["predicted"], 13);
    assert_eq!(v["match"], true);

    let out = tbraid(&[
        "satellite",
        "--a",
        "2",
        "--b",
        "2",
        "--k",
        "1",
        "--framing",
        "blackboard",
    ]);
    let text = stdout(&out);
    let v: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(v["crossings"], 19);
    assert!(v["note"].is_string());
}

#[test]
fn certify_exit_codes() {
    let out = tbraid(&["certify", "--a", "2", "--b", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "certified_not_tknot");

    let out = tbraid(&["certify", "--a", "3", "--b", "2", "--k", "10"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "inconclusive");

    let out = tbraid(&["certify", "--b", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_appends_to_catalog_once() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("catalog.jsonl");
    let cat_arg = cat.to_str().unwrap();
    let args = [
        "--catalog",
        cat_arg,
        "certify",
        "--sweep",
        "a=2..4",
        "b=2..4",
    ];

    let out = tbraid(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 9);
    let lines = std::fs::read_to_string(&cat).unwrap();
    assert_eq!(lines.lines().count(), 9);

    let out = tbraid(&args);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&cat).unwrap(), lines);
}

#[test]
fn catalog_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cat = dir.path().join("env.jsonl");
    let out = Command::new(env!("CARGO_BIN_EXE_tbraid"))
        .args(["fulltwist", "T((2,3),(3,4))"])
        .env("TBRAID_CATALOG", &cat)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&cat).unwrap();
    let entry: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(entry["kind"], "tlink_fulltwist");
    assert_eq!(entry["id"].as_str().unwrap().len(), 64);
}

#[test]
fn lemma_bruteforce_runs_for_small_index() {
    let out = tbraid(&["--verify", "full", "certify", "--a", "2", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lemma_bruteforce"]["passed"], true);
    assert_eq!(v["lemma_bruteforce"]["p"], 4);
}
