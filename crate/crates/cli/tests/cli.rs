use std::process::Command;

use serde_json::Value;
use zimin_cli::run;

fn json(args: &[&str]) -> (i32, Value) {
    let o = run(std::iter::once("zimctl").chain(args.iter().copied()));
    (o.code, serde_json::from_str(o.stdout.trim()).expect("stdout is JSON"))
}

#[test]
fn documented_examples() {
    let (code, v) = json(&["zimin", "index", "baaabaaa"]);
    assert_eq!((code, v["result"].clone()), (0, Value::from(3)));

    let (_, v) = json(&["counters", "make", "--order", "2", "--index", "0"]);
    assert_eq!(v["result"], "0_1 0_2 1_1 0_2");

    let (code, v) = json(&["search", "f", "--n", "2", "--k", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["kind"], "exact");
    assert_eq!(v["result"]["value"], 5);
    assert_eq!(v["certificate"]["witness"].as_str().unwrap().len(), 4);
}

#[test]
fn stream_matches_materialized() {
    let a = run(["zimctl", "counters", "make", "--order", "3", "--index", "9"]);
    let b = run(["zimctl", "counters", "make", "--order", "3", "--index", "9", "--stream"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["zimctl", "search", "f", "--n", "3", "--k", "2", "--parallel", "0"];
    let a = run(args);
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, run(args).stdout);
    let serial = run(["zimctl", "search", "f", "--n", "3", "--k", "2"]);
    let strip = |s: &str| {
        let mut v: Value = serde_json::from_str(s.trim()).unwrap();
        v["inputs"] = Value::Null;
        v
    };
    assert_eq!(strip(&a.stdout), strip(&serial.stdout));
}

#[test]
fn budget_exhaustion_exits_3_and_reports_lower_bound() {
    let (code, v) = json(&["search", "f", "--n", "4", "--k", "2", "--budget-nodes", "500"]);
    assert_eq!(code, 3);
    assert_eq!(v["result"]["kind"], "lower_bound");
    assert_eq!(v["certificate"]["exhausted"], false);
}

#[test]
fn checkpoint_file_resumes() {
    let dir = std::env::temp_dir().join(format!("zimctl-cp-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("f32.json");
    let p = path.to_str().unwrap();
    let mut last = (3, Value::Null);
    for _ in 0..100 {
        last = json(&["search", "f", "--n", "3", "--k", "2", "--budget-nodes", "20000", "--checkpoint", p]);
        if last.0 == 0 {
            break;
        }
    }
    assert_eq!(last.0, 0);
    assert_eq!(last.1["result"]["value"], 29);
    assert_eq!(last.1["inputs"]["resumed"], true);
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn checkpoint_needs_serial() {
    let o = run(["zimctl", "search", "f", "--n", "2", "--k", "2", "--parallel", "2", "--checkpoint", "x.json"]);
    if cfg!(feature = "parallel") {
        assert_eq!(o.code, 2);
    }
}

#[test]
fn suites_report_pass() {
    let (code, v) = json(&["regular", "check-identities"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"], "PASS");
    let words = &v["properties"][2]["detail"]["words"];
    assert!(words.as_array().unwrap().contains(&Value::from("001")));

    let (code, v) = json(&["counters", "check", "--order", "3"]);
    assert_eq!((code, v["result"].clone()), (0, Value::from("PASS")));

    let (code, v) = json(&["abelian", "oracles"]);
    assert_eq!((code, v["result"].clone()), (0, Value::from("PASS")));
}

#[test]
fn psi_commands() {
    let (_, v) = json(&["psi", "encode", "0_2 0_3"]);
    assert_eq!(v["result"], "00010000010100");
    let (_, v) = json(&["psi", "parses", "00010000010100"]);
    assert_eq!(v["result"], serde_json::json!(["(ε, 0_2 0_3, ε)"]));
    let (_, v) = json(&["psi", "simple", "0101010101"]);
    assert_eq!(v["result"], true);
    let (_, v) = json(&["psi", "counter", "--order", "3", "--index", "0"]);
    assert_eq!(v["length"], 112);
}

#[test]
fn abelian_commands() {
    let (_, v) = json(&["abelian", "g", "--n", "2", "--k", "2"]);
    assert_eq!(v["result"]["kind"], "exact");
    assert!(v["result"]["value"].as_u64().unwrap() <= 5);
    let (_, v) = json(&["abelian", "bounds", "--n", "2", "--k", "2"]);
    assert_eq!(v["result"]["upper_recurrence"], "4");
    let (_, v) = json(&["abelian", "bounds", "--n", "1", "--k", "2"]);
    assert!(v["result"]["lower"]["error"].is_string());
}

#[test]
fn resource_caps_from_environment() {
    let exe = env!("CARGO_BIN_EXE_zimctl");
    let out = Command::new(exe)
        .args(["zimin", "index", "abababab"])
        .env("ZIMIN_MAX_INDEX_LEN", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(exe).args(["counters", "make", "--order", "5", "--index", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(exe).args(["zimin", "type"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn regular_commands() {
    let (_, v) = json(&["regular", "equiv", "(0|1)*", "(1|0)*"]);
    assert_eq!(v["result"], true);
    let (_, v) = json(&["regular", "equiv", "0*", "(00)*"]);
    assert_eq!(v["counterexample"], "0");
    let (_, v) = json(&["regular", "enumerate", "0(1|0)", "--max-len", "3"]);
    assert_eq!(v["result"], serde_json::json!(["00", "01"]));
    assert_eq!(v["finite"], true);
}
