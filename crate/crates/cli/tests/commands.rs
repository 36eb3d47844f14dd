use std::process::{Command, Output};

use serde_json::Value;

fn ordfix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordfix"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn suite_on_half_grid_passes() {
    let out = ordfix(&["suite", "--library", "half-map-grid", "--theorem", "T2", "--alpha", "0.5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["hypotheses_hold"], true);
    assert_eq!(v["conclusions_hold"], true);
    assert_eq!(v["implication_respected"], true);
}

#[test]
fn falsify_drops_b03() {
    let out = ordfix(&["falsify", "--theorem", "T2", "--drop", "b03", "--trials", "1000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = &v["counterexample"];
    assert!(c.is_object(), "{v}");
    assert_eq!(c["verdict"]["implication_respected"], false);
    assert_eq!(c["seed"].as_u64().unwrap(), 7 + c["trial"].as_u64().unwrap());
}

#[test]
fn falsify_without_drop_finds_nothing() {
    for theorem in ["T2", "T4", "T9"] {
        let out = ordfix(&["falsify", "--theorem", theorem, "--trials", "300", "--seed", "1"]);
        assert_eq!(out.status.code(), Some(0), "{theorem}");
        assert!(json(&out)["counterexample"].is_null());
    }
}

#[test]
fn solve_two_cycle_fails() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("solve.json");
    let out = ordfix(&[
        "solve",
        "--library",
        "two-cycle",
        "--start",
        "0",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["converged"], false);
    assert_eq!(v["cycle"], serde_json::json!([0, 1, 0]));
    let csv = std::fs::read_to_string(report.with_extension("csv")).unwrap();
    assert!(csv.starts_with("step,point,step_distance,bound\n"));
}

#[test]
fn solve_half_grid_converges() {
    let out = ordfix(&["solve", "--library", "half-map-grid", "--start", "100"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["fixed_point"], 0);
}

#[test]
fn malformed_instances_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("short.json", r#"{"n": 2, "dist": [[0, 1], [1]], "order": []}"#, "$.dist[1]"),
        ("syntax.json", r#"{"n": 2, "dist": [[0, 1], [1, 0]"#, "$"),
        ("type.json", r#"{"n": 2, "dist": [[0, 1], [1, "a"]], "order": []}"#, "dist[1][1]"),
    ];
    for (name, text, loc) in cases {
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        let out = ordfix(&["check", "--instance", p.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = String::from_utf8_lossy(&out.stderr);
        assert!(err.contains(loc), "{name}: {err}");
    }
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(ordfix(&["suite", "--theorem", "T2"]).status.code(), Some(2));
    assert_eq!(ordfix(&["suite", "--library", "nope", "--theorem", "T2"]).status.code(), Some(2));
    assert_eq!(
        ordfix(&["suite", "--library", "two-cycle", "--theorem", "T99"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ordfix(&["falsify", "--theorem", "T2", "--drop", "zz"]).status.code(),
        Some(2)
    );
    assert_eq!(
        ordfix(&["gen", "--gen", "n=3,alpha=2"]).status.code(),
        Some(2)
    );
    assert_eq!(ordfix(&["bogus"]).status.code(), Some(2));
}

#[test]
fn gen_round_trips_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("inst.json");
    let out = ordfix(&["gen", "--gen", "n=5,target=T4", "--seed", "3", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let again = ordfix(&["gen", "--gen", "n=5,target=T4", "--seed", "3"]);
    let first = std::fs::read_to_string(&p).unwrap();
    assert_eq!(first.trim(), String::from_utf8_lossy(&again.stdout).trim());

    let check = ordfix(&["check", "--instance", p.to_str().unwrap()]);
    assert_eq!(check.status.code(), Some(0));
    assert_eq!(json(&check)["all_pass"], true);
    let suite = ordfix(&["suite", "--instance", p.to_str().unwrap(), "--theorem", "T4"]);
    assert_eq!(suite.status.code(), Some(0));
}

#[test]
fn check_variants_and_maia() {
    let ok = ordfix(&["check", "--library", "half-map-grid", "--variant", "a02"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["holds"], true);
    let bad = ordfix(&["check", "--library", "two-cycle", "--variant", "b04"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(json(&bad)["witness"].is_object());

    let m = ordfix(&["maia", "--library", "half-map-grid", "--lambda", "1.5"]);
    assert_eq!(m.status.code(), Some(0));
    assert_eq!(json(&m)["report"]["identity"], true);
    // disconnected comparability graph: a failed precondition, reported
    let pre = ordfix(&["maia", "--library", "two-components"]);
    assert_eq!(pre.status.code(), Some(1));
    assert!(json(&pre)["error"].as_str().unwrap().contains("b03"));
}
