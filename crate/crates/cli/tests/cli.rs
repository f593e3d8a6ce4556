use std::process::{Command, Output};

fn cohom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("cohom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn sl2_z3_abelianization() {
    let o = cohom(&["homology", "--degree", "1", r#"{"group":{"matrix_group":{"kind":"SL","n":2,"m":3}}}"#]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "H_1(G, M) = Z/3");
}

#[test]
fn negation_module_machine_output() {
    let inst = r#"{"group":{"cyclic":2},"module":{"ambient_rank":1,"relations":[],"action":{"1":[[-1]]}}}"#;
    let o = cohom(&["coinvariants", "--format", "machine", inst]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], serde_json::json!([2]));
    assert_eq!(v["free_rank"], 0);

    let o = cohom(&["invariants", "--format", "machine", inst]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], serde_json::json!([]));

    let o = cohom(&["cohomology", "--degree", "1", "--format", "machine", inst]);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["value"], serde_json::json!([2]));
}

#[test]
fn ring_flag_overrides_instance() {
    let o = cohom(&["homology", "--degree", "1", "--ring", "Z[1/2]", r#"{"group":{"cyclic":4}}"#]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "H_1(G, M) = 0");
}

#[test]
fn builtin_suite_exits_zero() {
    let o = cohom(&["verify", "suite", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let lines: Vec<serde_json::Value> =
        stdout(&o).lines().map(|l| serde_json::from_str(l).expect("one JSON record per line")).collect();
    assert!(lines.len() >= 20);
    let ids: Vec<&str> = lines.iter().map(|v| v["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for v in &lines {
        assert!(["pass", "skipped_budget"].contains(&v["status"].as_str().unwrap()));
    }
}

#[test]
fn reports_are_deterministic() {
    let a = cohom(&["verify", "suite", "--format", "machine"]);
    let b = cohom(&["verify", "suite", "--format", "machine"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn failing_scenario_exits_one() {
    // over Z the hypothesis of the claim fails and nothing expects it
    let p = write_temp(
        "fail.json",
        r#"[{"id": "ex", "claim": "example_1", "ring": {"kind": "integers"}}]"#,
    );
    let o = cohom(&["verify", p.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "fail");
}

#[test]
fn precondition_failure_exits_one() {
    let p = write_temp(
        "pre.json",
        r#"{"id": "l11", "claim": "lemma_1_1", "group": {"cyclic": 2}, "ring": {"kind": "integers"}}"#,
    );
    let o = cohom(&["verify", p.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["status"], "precondition_failure");
}

#[test]
fn expected_precondition_failure_exits_zero() {
    let p = write_temp(
        "expect.json",
        r#"{"scenarios": [{"id": "l11", "claim": "lemma_1_1", "group": {"cyclic": 2},
            "ring": {"kind": "integers"}, "expect_precondition_failure": true}]}"#,
    );
    let o = cohom(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[pass] l11"));
}

#[test]
fn budget_skip_exits_zero() {
    let o = cohom(&["verify", "suite", "--budget-cells", "10", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("skipped_budget"));
}

#[test]
fn parse_error_reports_position_and_exits_two() {
    let p = write_temp("bad.json", "[\n  {\"id\": \"x\", \"claim\": \"lemma_1_1\",,}\n]");
    let o = cohom(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_claim_and_field_are_input_errors() {
    assert_eq!(cohom(&["enumerate", "lemma_9_9"]).status.code(), Some(2));
    let p = write_temp("field.json", r#"{"id": "x", "claim": "uct", "colour": 1}"#);
    let o = cohom(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
    assert_eq!(cohom(&["homology", "/nonexistent/instance.json"]).status.code(), Some(2));
}

#[test]
fn enumerate_lemma_1_1_has_33_scenarios() {
    let o = cohom(&["enumerate", "lemma_1_1", "--max-order", "8", "--seeds", "3", "--format", "machine"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["scenarios"].as_array().unwrap().len(), 33);

    let o = cohom(&["enumerate", "lemma_1_1", "--run", "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 33);
}

#[test]
fn enumerated_scenarios_round_trip_through_verify() {
    let o = cohom(&["enumerate", "oracle_cyclic", "--max-order", "4", "--format", "machine"]);
    let p = write_temp("oracle.json", &stdout(&o));
    let o = cohom(&["verify", p.to_str().unwrap(), "--format", "machine"]);
    assert_eq!(o.status.code(), Some(0));
    // Z1..Z4 over 3 rings, negation for Z2 and Z4
    assert_eq!(stdout(&o).lines().count(), 18);
}
