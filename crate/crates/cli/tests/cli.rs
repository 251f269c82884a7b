use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn invdeg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_invdeg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn verdicts(v: &Value) -> Vec<(String, String)> {
    v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            (
                r["id"].as_str().unwrap().to_string(),
                r["verdict"].as_str().unwrap().to_string(),
            )
        })
        .collect()
}

#[test]
fn first_degree_at_q5() {
    let out = invdeg(&["degrees", "--q", "5", "--n", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let first = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "degrees.q05.first")
        .unwrap();
    assert_eq!(first["data"]["degree"], 21);
    assert_eq!(first["verdict"], "pass");
    assert_eq!(v["version"]["schema"], 1);
}

#[test]
fn records_are_sorted_and_output_is_reproducible() {
    let args = ["degrees", "--q", "4", "--n", "2", "--seed", "42"];
    let mut a = json(&invdeg(&args));
    let mut b = json(&invdeg(&args));
    let ids: Vec<String> = verdicts(&a).into_iter().map(|(id, _)| id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    a["timing"] = Value::Null;
    b["timing"] = Value::Null;
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn csv_columns() {
    let out = invdeg(&["degrees", "--q", "4", "--n", "2", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["n,degree,witnesses,consensus", "1,13,9,true", "2,65,9,true"]);
}

#[test]
fn charpoly_range_and_lower_bound() {
    let out = invdeg(&["charpoly", "--q", "5..12"]);
    assert_eq!(out.status.code(), Some(0));
    let v = verdicts(&json(&out));
    assert_eq!(v.len(), 8);
    assert!(v.iter().all(|(_, verdict)| verdict == "pass"));
    let low = invdeg(&["charpoly", "--q", "4"]);
    assert_eq!(low.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&low.stderr).contains("q >= 5"));
}

#[test]
fn dominant_root_at_q5() {
    let v = json(&invdeg(&["charpoly", "--q", "5"]));
    let d = v["records"][0]["data"]["dominant"].as_f64().unwrap();
    assert!((d - 6.854101966).abs() < 1e-9);
}

#[test]
fn unsupported_sizes_exit_one() {
    assert_eq!(invdeg(&["orders", "--q", "7"]).status.code(), Some(1));
    assert_eq!(invdeg(&["verify-orbits", "--q", "3"]).status.code(), Some(1));
    assert_eq!(
        invdeg(&["degrees", "--q", "5", "--primes", "1", "--lines", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        invdeg(&["degrees", "--q", "5", "--space", "banded"]).status.code(),
        Some(1)
    );
    assert_eq!(invdeg(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn single_claim_report() {
    let out = invdeg(&[
        "verify-orbits",
        "--q",
        "5",
        "--claim",
        "sigma11",
        "--trials",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        verdicts(&json(&out)),
        [("orbits.q05.sigma11".to_string(), "pass".to_string())]
    );
}

#[test]
fn orders_at_q5() {
    let out = invdeg(&["orders", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let measured = &v["records"][0]["data"]["measured"];
    assert_eq!(measured["b"], 3);
    assert_eq!(measured["lambda"], 16);
}

fn write(dir: &Path, name: &str, args: &[&str]) {
    let path = dir.join(name);
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    full.extend(["--out", &p]);
    assert!(invdeg(&full).status.success());
}

#[test]
fn report_merges_and_groups_by_q() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "d5.json", &["degrees", "--q", "5", "--n", "2"]);
    write(dir.path(), "d4.json", &["degrees", "--q", "4", "--n", "2"]);
    write(dir.path(), "c5.json", &["charpoly", "--q", "5"]);
    let out = invdeg(&["report", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.contains("## q = 4"));
    assert!(md.contains("## q = 5"));
    assert!(md.contains("| n | measured | model | ratio | gap |"));
    assert!(md.contains("| 2 | 206 | 206 |"));
}

#[test]
fn report_rejects_empty_and_foreign_inputs() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(invdeg(&["report", dir.path().to_str().unwrap()]).status.code(), Some(1));
    fs::write(
        dir.path().join("old.json"),
        r#"{"version":{"schema":0,"tool":"0"},"records":[]}"#,
    )
    .unwrap();
    let out = invdeg(&["report", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("expected schema 1"));
}
