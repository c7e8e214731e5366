//! End-to-end runs of the `qcert` binary: exit codes and report files.

use std::path::PathBuf;
use std::process::Command;

fn qcert(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qcert")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qcert-{}-{name}", std::process::id()))
}

#[test]
fn q4_d_pd_range_exits_zero() {
    let (code, out) = qcert(&["q4", "--family", "D", "--n", "8..24", "--quiet"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn q6_expected_failure_is_a_pass() {
    let json = temp_path("q6.jsonl");
    let (code, _) = qcert(&["q6", "--family", "D", "--n", "27..27", "--s", "2", "--json", json.to_str().unwrap()]);
    assert_eq!(code, 0);
    let body = std::fs::read_to_string(&json).unwrap();
    let v: serde_json::Value = serde_json::from_str(body.lines().next().unwrap()).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["expected"], "not positive definite");
    assert_eq!(v["actual"], "indefinite");
    assert!(v["witness"]["witnesses"].as_array().is_some_and(|w| !w.is_empty()));
    let _ = std::fs::remove_file(json);
}

#[test]
fn linearized_order6_example() {
    let (code, out) = qcert(&["linearized", "--order", "6", "--n", "12", "--k", "2", "--s", "0"]);
    assert_eq!(code, 0);
    assert!(out.contains("1 checks, 1 passed"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qcert(&["q4", "--n", "ten"]).0, 2);
    assert_eq!(qcert(&["noncompact", "--n", "5..3"]).0, 2);
    assert_eq!(qcert(&[]).0, 2);
}

#[test]
fn below_the_window_noncompact_is_an_error_exit_one() {
    let (code, out) = qcert(&["noncompact", "--n", "26..26"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("\"verdict\":\"error\""));
}

#[test]
fn json_output_is_deterministic_apart_from_timing() {
    let strip = |p: &PathBuf| -> Vec<serde_json::Value> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v["elapsed_ms"] = 0.into();
                v
            })
            .collect()
    };
    let (a, b) = (temp_path("a.jsonl"), temp_path("b.jsonl"));
    for (p, jobs) in [(&a, "1"), (&b, "3")] {
        let (code, _) = qcert(&["q4", "--n", "8..16", "--jobs", jobs, "--quiet", "--json", p.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
    assert_eq!(strip(&a), strip(&b));
    let _ = (std::fs::remove_file(a), std::fs::remove_file(b));
}

#[test]
fn markdown_summary_is_written() {
    let md = temp_path("summary.md");
    let (code, _) = qcert(&["noncompact", "--n", "27..28", "--md", md.to_str().unwrap()]);
    assert_eq!(code, 0);
    let body = std::fs::read_to_string(&md).unwrap();
    assert!(body.contains("| `noncompact.delta_direction` | 2 | 0 | 0 |"));
    let _ = std::fs::remove_file(md);
}
