//! End-to-end coverage of the command-line surface: golden values, exit
//! codes, and byte-determinism of reports.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_steinberg-gz"))
}

fn run_with_stdin(args: &[&str], payload: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child
        .stdin
        .as_mut()
        .unwrap()
        .write_all(payload.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn pi_golden_example() {
    let out = run_with_stdin(&["pi"], r#"{"n":2,"entries":[["2","0"],["3","5"]]}"#);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["values"]["1,1"], "2");
    assert_eq!(json["values"]["2,1"], "10");
    assert_eq!(json["values"]["2,2"], "10");
    assert!(out.stdout.ends_with(b"\n"));
}

#[test]
fn pi_inverse_round_trip() {
    let matrix = r#"{"n":3,"entries":[["2","0","0"],["3","5","0"],["-1","1/2","4"]]}"#;
    let pi = run_with_stdin(&["pi"], matrix);
    assert_eq!(pi.status.code(), Some(0));
    let triangle = String::from_utf8(pi.stdout).unwrap();
    let back = run_with_stdin(&["pi-inv"], &triangle);
    assert_eq!(back.status.code(), Some(0));
    let original: serde_json::Value = serde_json::from_str(matrix).unwrap();
    assert_eq!(stdout_json(&back)["entries"], original["entries"]);
}

#[test]
fn steinberg_sl2() {
    let out = run_with_stdin(&["steinberg"], r#"["7"]"#);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["entries"][0][0], "-7");
    assert_eq!(json["entries"][0][1], "1");
    assert_eq!(json["entries"][1][0], "-1");
    assert_eq!(json["entries"][1][1], "0");
}

#[test]
fn r_quotient_matches_pi_on_all_ones_factor() {
    let payload = r#"{"u":{"n":2,"entries":[["2","0"],["3","5"]]},"v":{"n":2,"entries":[["1","1"],["0","1"]]}}"#;
    let out = run_with_stdin(&["r-quotient"], payload);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["values"]["2,1"], "10");
    assert_eq!(json["values"]["2,2"], "10");
}

#[test]
fn branch_multiplicity_one() {
    let out = run(&["branch", "--n", "7", "--m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["exponent"], 0);
    assert_eq!(json["multiplicity"], "1");
    assert_eq!(json["command"], "branch");
}

#[test]
fn branch_with_degrees() {
    let out = run(&["branch", "--n", "3", "--m", "1", "--ell", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["exponent"], 2);
    assert_eq!(json["multiplicity"], "25");
    assert_eq!(json["algebra_degree"], "125");
    assert_eq!(json["center_cover_degree"], "125");
}

#[test]
fn malformed_json_is_code_2() {
    let out = run_with_stdin(&["pi"], "{not json");
    assert_eq!(out.status.code(), Some(2));
    let json = stdout_json(&out);
    assert!(json["error"].is_string());
}

#[test]
fn invariant_violations_are_code_2() {
    // not lower triangular
    let out = run_with_stdin(&["pi"], r#"{"n":2,"entries":[["2","1"],["3","5"]]}"#);
    assert_eq!(out.status.code(), Some(2));
    // zero denominator in an entry
    let out = run_with_stdin(&["pi"], r#"{"n":1,"entries":[["1/0"]]}"#);
    assert_eq!(out.status.code(), Some(2));
    // triangle with zero determinant datum
    let out = run_with_stdin(&["pi-inv"], r#"{"n":1,"values":{"1,1":"0"}}"#);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gz_check_deterministic_and_clean() {
    let args = ["gz-check", "--n", "2", "--samples", "4", "--seed", "9"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(
        a.stdout, b.stdout,
        "same seed must give byte-identical reports"
    );
    let json = stdout_json(&a);
    assert_eq!(json["violations"].as_array().unwrap().len(), 0);
    assert_eq!(json["max_abs"], "0");
    assert_eq!(json["command"], "gz-check");
    assert_eq!(json["seed"], 9);
    assert!(json["properties"].is_array());
}

#[test]
fn gz_check_mutated_is_code_1() {
    let out = run(&["gz-check", "--n", "2", "--samples", "3", "--mutate"]);
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert!(!json["violations"].as_array().unwrap().is_empty());
}

#[test]
fn casimir_and_rank_reports() {
    let out = run(&["casimir", "--n", "2", "--samples", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["max_abs"], "0");

    let out = run(&["rank", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["family_rank"], 6);
    assert_eq!(json["bivector_rank"], 6);
}

#[test]
fn flow_report_and_trajectory() {
    let dir = std::env::temp_dir().join(format!("sgz_flow_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let traj = dir.join("traj.jsonl");
    let out = run(&[
        "flow",
        "--n",
        "2",
        "--steps",
        "40",
        "--seed",
        "1",
        "--trajectory-out",
        traj.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert!(json["max_relative_drift"].as_f64().unwrap() <= 1e-6);
    let lines = std::fs::read_to_string(&traj).unwrap();
    assert_eq!(lines.lines().count(), 41);
    let first: serde_json::Value = serde_json::from_str(lines.lines().next().unwrap()).unwrap();
    assert_eq!(first["step"], 0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn flow_casimir_exactly_stationary() {
    let out = run(&["flow", "--n", "2", "--steps", "25", "--hamiltonian", "f2,1"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["stationary"], true);
    assert_eq!(json["max_relative_drift"], 0.0);
}

#[test]
fn lemma_suite_passes_and_mutation_fails() {
    let out = run(&["lemma-suite", "--n", "3", "--samples", "3", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["failures"], 0);
    let checks = json["checks"].as_array().unwrap();
    assert!(checks.len() >= 12);
    assert!(checks.iter().all(|c| c["pass"] == true));

    let out = run(&[
        "lemma-suite",
        "--n",
        "3",
        "--samples",
        "3",
        "--seed",
        "4",
        "--mutate",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let json = stdout_json(&out);
    assert!(json["failures"].as_u64().unwrap() >= 1);
}

#[test]
fn lemma_suite_degenerate_n() {
    // n below 2 is clamped to the smallest meaningful size and still passes
    let out = run(&["lemma-suite", "--n", "1", "--samples", "2"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn lemma_suite_respects_max_n_env() {
    let out = bin()
        .args(["lemma-suite", "--n", "6", "--samples", "1"])
        .env("STEINBERG_GZ_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["n"], 3);
}

#[test]
fn output_file_flag() {
    let dir = std::env::temp_dir().join(format!("sgz_out_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = bin()
        .args([
            "branch",
            "--n",
            "4",
            "--m",
            "3",
            "--out",
            path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.ends_with('\n'));
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["exponent"], 0);
    std::fs::remove_dir_all(&dir).ok();
}
