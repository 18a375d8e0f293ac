use std::process::{Command, Output};

use serde_json::Value;

fn workbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_workbench"))
        .args(args)
        .env_remove("WORKBENCH_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lists_suites() {
    let out = workbench(&["suite", "list"]);
    assert!(out.status.success());
    let names = json(&out);
    assert_eq!(names.as_array().unwrap().len(), 6);
    assert!(names.as_array().unwrap().iter().any(|n| n == "thm-cycbar"));
}

#[test]
fn unknown_suite_is_an_error() {
    let out = workbench(&["suite", "run", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown suite"));
}

#[test]
fn reports_are_deterministic() {
    let run = || {
        let mut v = json(&workbench(&[
            "--seed",
            "7",
            "--trials",
            "100",
            "suite",
            "run",
            "operad-laws",
        ]));
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let a = run();
    assert_eq!(a, run());
    assert_eq!(a["failures"], Value::Array(vec![]));
    assert_eq!(a["suite"], "operad-laws");
}

#[test]
fn report_written_to_file() {
    let dir = std::env::temp_dir().join(format!("workbench-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = workbench(&[
        "--trials",
        "20",
        "--out",
        path.to_str().unwrap(),
        "suite",
        "run",
        "embed-compose",
    ]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "embed-compose");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn rational_round_trip_normalizes() {
    let out = workbench(&["element", "roundtrip", "\"2/4\""]);
    assert!(out.status.success());
    assert_eq!(json(&out), Value::from("1/2"));
}

#[test]
fn gap_sum_violation_is_rejected() {
    let bad = r#"{"m":1,"pairs":[{"zeta":"0","r":"0"}],"phi":["1/2"],"variant":"uCc"}"#;
    let out = workbench(&["element", "roundtrip", bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gap"));
}

#[test]
fn normalizes_words() {
    let out = workbench(&["--m", "2", "cyclic", "normalize", "--word", "s0.t1"]);
    assert!(out.status.success());
    assert_eq!(json(&out)["normal_form"], "t2^2.s1");
}

#[test]
fn twists_a_point() {
    let out = workbench(&[
        "cyclic",
        "act",
        "--word",
        "t0",
        "--point",
        r#"{"m":3,"r":"1/3","t":["1"]}"#,
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["r"], "7/3");
}

#[test]
fn composes_disks() {
    let out = workbench(&[
        "operad",
        "compose",
        "--instance",
        "dR",
        "--outer",
        r#"[{"center":"0","radius":"1/2"}]"#,
        "--inners",
        r#"[[{"center":"1/2","radius":"1/4"}]]"#,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v = json(&out);
    assert_eq!(v[0]["center"], "1/4");
    assert_eq!(v[0]["radius"], "1/8");
}
