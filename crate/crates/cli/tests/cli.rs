use std::process::Command;

use repring_cli::{param_hash, run, EXIT_INPUT, EXIT_OK};
use serde_json::Value;

fn repring(args: &[&str]) -> repring_cli::Outcome {
    run(std::iter::once("repring").chain(args.iter().copied()))
}

fn json(args: &[&str]) -> Value {
    let out = repring(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("valid json")
}

#[test]
fn tensor_of_sign_classes_gives_four_characters() {
    let v = json(&["tensor", "--zeta", "1/2", "--zeta2", "1/2"]);
    let parts = v["result"]["decomposition"].as_array().unwrap();
    assert_eq!(parts.len(), 4);
    assert!(parts.iter().all(|p| p["mult"] == 1 && p["triple"]["zeta"] == "0/1"));
    assert_eq!(v["version"], repring_core::VERSION);
    assert_eq!(v["params"]["zeta"], "1/2");
}

#[test]
fn tensor_with_oracle_agrees() {
    let v = json(&["tensor", "--zeta", "1/3", "--zeta2", "1/6", "--alpha", "1/2", "--oracle-level", "6"]);
    assert_eq!(v["result"]["oracle"]["agrees"], true);
    assert_eq!(v["passed"], true);
}

#[test]
fn complete_example() {
    let v = json(&["complete", "--prime", "2", "--precision", "3", "--order-bound", "2"]);
    assert_eq!(v["result"]["coefficients"], "Z/8");
    let ranks = &v["result"]["tower"]["ranks"];
    assert_eq!((ranks["0"].as_u64(), ranks["1"].as_u64(), ranks["2"].as_u64()), (Some(4), Some(8), Some(4)));
    assert!(v["result"]["tower"]["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
    assert_eq!(v["result"]["tower"]["prime"], 2);
    assert_eq!(v["result"]["tower"]["precision"], 3);
}

#[test]
fn complete_with_extras() {
    let v = json(&[
        "complete",
        "--prime",
        "2",
        "--precision",
        "3",
        "--order-bound",
        "1",
        "--idempotent",
        "1/3",
        "--split-bound",
        "6",
        "--i-squared",
        "--sum-ranks",
        "1,2,1",
    ]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["result"]["idempotent"]["idempotent"], true);
    assert_eq!(v["result"]["completed_sum"]["ranks"], serde_json::json!([2, 4, 2, 0]));
}

#[test]
fn tor_csv_example() {
    let out = repring(&["tor", "--m", "4", "--maxdeg", "5"]);
    assert_eq!(out.code, EXIT_OK);
    let rows: Vec<&str> = out.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "degree,invariant_factors,group");
    let groups: Vec<&str> = rows[1..].iter().map(|r| r.rsplit(',').next().unwrap()).collect();
    assert_eq!(groups, ["Z", "Z/4", "0", "Z/4", "0", "Z/4"]);
    assert!(out.stdout.starts_with("# repring "));
}

#[test]
fn tor_mod_two_module() {
    let v = json(&["tor", "--m", "2", "--maxdeg", "3", "--coefficients", "2", "--module", "mod:2", "--format", "json"]);
    let sizes: Vec<usize> = (0..4).map(|n| v["result"][n.to_string()].as_array().unwrap().len()).collect();
    assert_eq!(sizes, [1, 2, 2, 2]);
}

#[test]
fn product_and_table() {
    let v = json(&["product", "--left", "b:1/2", "--right", "c:1/2"]);
    assert_eq!(v["result"]["transfer"]["agrees"], true);
    let out = repring(&["table", "--max-order", "2"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("\na:1/2,a:1/2,4,a:0/1\n"));
    assert!(out.stdout.contains("\nc:1/2,b:1/2,-1,d:0/1\n"));
}

#[test]
fn bar_and_circle() {
    let v = json(&["bar", "--prime", "2", "--group-order", "3", "--maxdeg", "4"]);
    assert_eq!(v["result"]["dimensions"], serde_json::json!([1, 0, 0, 0, 0]));
    let v = json(&["circle", "chain", "--prime", "2", "--levels", "1,2,4,8"]);
    assert_eq!(v["result"]["dims"], serde_json::json!([1, 0]));
    let v = json(&["circle", "complete", "--p", "3", "--s-max", "2"]);
    let lines = v["result"]["lines"].as_array().unwrap();
    assert!(lines[1].as_str().unwrap().starts_with("degree 1: not derived"));
    let v = json(&["circle", "ideal", "--p", "2", "--k", "2", "--s", "3", "--colimit"]);
    assert_eq!(v["result"]["colimit"]["group"], serde_json::json!([8]));
}

#[test]
fn verify_suites_pass() {
    let out = repring(&["verify", "oracle", "--max-order", "4"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(out.stdout.contains("oracle,tensor_rule_vs_bruteforce,"));
    let out = repring(&["verify", "all", "--profile", "quick"]);
    assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
    assert!(!out.stdout.contains("FAIL"));
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["tensor", "--zeta", "1/0", "--zeta2", "1/2"][..],
        &["tensor", "--zeta", "x", "--zeta2", "1/2"],
        &["complete", "--prime", "4"],
        &["complete", "--prime", "2", "--order-bound", "40"],
        &["tor", "--m", "4", "--bogus"],
        &["bar", "--prime", "2", "--group-order", "9"],
        &["table", "--max-order", "1000"],
        &["nonsense"],
    ] {
        let out = repring(args);
        assert_eq!(out.code, EXIT_INPUT, "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn csv_unavailable_is_input_error() {
    let out = repring(&["bar", "--prime", "2", "--group-order", "2", "--format", "csv"]);
    assert_eq!(out.code, EXIT_INPUT);
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "products", "--max-order", "4", "--format", "json"];
    assert_eq!(repring(&args).stdout, repring(&args).stdout);
    let args = ["table", "--max-order", "3"];
    assert_eq!(repring(&args).stdout, repring(&args).stdout);
}

#[test]
fn golden_files_are_keyed_by_parameters() {
    let dir = std::env::temp_dir().join(format!("repring-golden-{}", std::process::id()));
    let d = dir.to_str().unwrap();
    let out = repring(&["--golden-dir", d, "tor", "--m", "3"]);
    assert_eq!(out.code, EXIT_OK);
    let params: Value = serde_json::json!({"coefficients": "z", "m": 3, "maxdeg": 5, "module": "trivial"});
    let path = dir.join("tor").join(format!("{}.json", param_hash("tor", &params)));
    let stored: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(stored["params"], params);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_reports_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_repring");
    let ok = Command::new(bin).args(["tor", "--m", "2"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().contains("Z/2"));
    let bad = Command::new(bin).args(["complete", "--prime", "9"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8(bad.stderr).unwrap().contains("not prime"));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
}
