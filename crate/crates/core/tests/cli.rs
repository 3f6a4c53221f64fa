use std::process::{Command, Output};

use serde_json::Value;

fn qsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsc")).args(args).output().expect("spawn qsc")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

/// Report with every elapsed field removed.
fn body(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("total_elapsed_ms");
    for r in v["results"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("elapsed_ms");
    }
    v
}

#[test]
fn verify_holds() {
    let out = qsc(&["verify", "--check", "thm12", "--d", "3", "--n", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["id"], "THM12");
    assert_eq!(v["status"], "HOLDS");
    assert_eq!(v["params"]["n"], 5);
}

#[test]
fn verify_out_of_range_is_skipped() {
    let out = qsc(&["verify", "--check", "thm11", "--d", "4", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["status"], "SKIPPED_PRECONDITION");
}

#[test]
fn verify_usage_errors() {
    assert_eq!(qsc(&["verify", "--check", "bogus"]).status.code(), Some(2));
    assert_eq!(qsc(&["verify", "--check", "thm12", "--d", "3"]).status.code(), Some(2));
    assert_eq!(qsc(&["verify"]).status.code(), Some(2));
    assert_eq!(qsc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn verify_karlsson_minton_list() {
    let out = qsc(&["verify", "--check", "km", "--n-list", "2,0,1", "--trials", "3", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["params"]["n_list"], serde_json::json!([2, 0, 1]));
    assert_eq!(v["params"]["seed"], 7);
}

#[test]
fn km_sweep_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        let out = qsc(&["sweep", "--check", "km", "--m-max", "2", "--nj-max", "2", "--trials", "2", "--seed", "42", "--out", p]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        serde_json::from_str::<Value>(&std::fs::read_to_string(path).unwrap()).unwrap()
    };
    let a = run("a.json");
    let b = run("b.json");
    assert_eq!(a["summary"]["holds"], 3 + 9);
    assert_eq!(a["plan"]["seed"], 42);
    assert_eq!(body(a), body(b));
}

#[test]
fn empty_plan_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    std::fs::write(&plan, "{}").unwrap();
    let out = qsc(&["sweep", "--plan", plan.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["results"], serde_json::json!([]));
    assert_eq!(v["summary"]["fails"], 0);
}

#[test]
fn plan_file_with_points_and_ranges() {
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    std::fs::write(
        &plan,
        r#"{"entries": [
            {"check": "EQ13", "points": [{"d": 2, "n": 3}, {"d": 3, "n": 4}]},
            {"check": "bracket_factorization", "ranges": {"n": {"from": 1, "to": 4}}}
        ]}"#,
    )
    .unwrap();
    let out = qsc(&["sweep", "--plan", plan.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "id,params,status,elapsed_ms");
    assert_eq!(lines.len(), 1 + 2 + 4);
    assert!(lines[1].starts_with("BRACKET_FACTORIZATION,n=1,SKIPPED_PRECONDITION,"));
    assert!(lines[5].starts_with("EQ13,d=2;n=3,HOLDS,"));
}

#[test]
fn unreadable_plan_is_usage_error() {
    assert_eq!(qsc(&["sweep", "--plan", "/nonexistent/plan.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let plan = dir.path().join("plan.json");
    std::fs::write(&plan, "not json").unwrap();
    assert_eq!(qsc(&["sweep", "--plan", plan.to_str().unwrap()]).status.code(), Some(2));
    std::fs::write(&plan, r#"{"entries": [{"check": "nope"}]}"#).unwrap();
    assert_eq!(qsc(&["sweep", "--plan", plan.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(qsc(&["sweep", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn write_failure_exit_code() {
    let out = qsc(&["sweep", "--check", "bracket_factorization", "--n", "2..3", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(out.status.code(), Some(3));
    let out = qsc(&["verify", "--check", "thm12", "--d", "3", "--n", "5", "--out", "/nonexistent/dir/r.json"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn list_prints_every_check() {
    let out = qsc(&["list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    for id in ["EQ13", "THM42", "P8_46", "KM", "QBINOM_VANISHING", "LEMMA_SPLIT", "WLT_INTEGRALITY", "R1_COLLAPSE"] {
        assert!(text.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}
