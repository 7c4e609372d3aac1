use std::process::{Command, Output};

use serde_json::Value;

fn ghwlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ghwlab"))
        .args(args)
        .output()
        .expect("run ghwlab")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = ghwlab(&all);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn ghw_hierarchy_q27() {
    let v = json(&["ghw", "--p", "3", "--m", "3", "--N", "2"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "ghw");
    assert_eq!(v["verdict"]["passed"], true);
    let d: Vec<u64> = v["hierarchy"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["d_r"].as_u64().unwrap())
        .collect();
    assert_eq!(d, [9, 12, 13]);
}

#[test]
fn skew_and_family_b_values() {
    let v = json(&[
        "ghw",
        "--p",
        "7",
        "--m",
        "1",
        "--family",
        "C",
        "--skew",
        "canonical",
    ]);
    assert_eq!(v["hierarchy"][0]["d_r"], 3);
    let v = json(&["ghw", "--p", "5", "--m", "2", "--N", "2", "--family", "B"]);
    let d: Vec<&Value> = v["hierarchy"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| &r["d_r"])
        .collect();
    assert_eq!(d, [2, 3]);
}

#[test]
fn periods_report_matches_closed_form() {
    let v = json(&["periods", "--p", "5", "--m", "2", "--N", "3"]);
    assert_eq!(v["verdict"]["passed"], true);
    assert!(v["periods"].as_array().is_some_and(|a| !a.is_empty()));
}

#[test]
fn json_is_stable_across_runs() {
    let args = [
        "verify", "--p", "3", "--m", "4", "--N", "4", "--format", "json",
    ];
    let a = ghwlab(&args);
    let b = ghwlab(&[&args[..], &["--threads", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_has_one_row_per_dimension() {
    let out = ghwlab(&["ghw", "--p", "3", "--m", "4", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = text.lines();
    assert!(rows.next().unwrap().starts_with("r,d_brute,d_closed"));
    let d: Vec<&str> = rows.map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(d, ["54", "72", "78", "80"]);
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("ghwlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("field.json");
    let out = ghwlab(&[
        "field",
        "--p",
        "3",
        "--m",
        "2",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "field");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn bad_input_exits_with_usage_code() {
    let cases: [&[&str]; 5] = [
        &["field", "--p", "4"],
        &["periods", "--p", "3", "--m", "2", "--N", "3"],
        &[
            "ghw",
            "--p",
            "5",
            "--m",
            "2",
            "--family",
            "C",
            "--skew",
            "canonical",
        ],
        &["code", "--p", "3", "--m", "4", "--budget", "1"],
        &["ghw", "--p", "3", "--m", "2", "--family", "Z"],
    ];
    for args in cases {
        let out = ghwlab(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn small_sweep_passes() {
    let v = json(&["sweep", "--q-max", "27"]);
    assert_eq!(v["verdict"]["passed"], true);
    assert!(v["sweep"]["instances"].as_u64().unwrap() > 0);
}
