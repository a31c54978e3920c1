//! End-to-end runs of the `pa-fixpoint` binary: exit codes, JSON on stdout,
//! byte-determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use pa_fixpoint::cli::{cmd_paper, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use pa_fixpoint::reproduce::Expectations;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pa-fixpoint")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

struct Files(TempDir);

impl Files {
    fn new() -> Self {
        Self(tempfile::tempdir().unwrap())
    }

    fn write(&self, name: &str, body: &str) -> PathBuf {
        let p = self.0.path().join(name);
        std::fs::write(&p, body).unwrap();
        p
    }
}

const DISCRETE3: &str = r#"{"points": ["0","1","2"], "dist": [[0,1,1],[1,0,1],[1,1,0]], "s": 1.0}"#;

#[test]
fn validate_discrete_space() {
    let f = Files::new();
    let p = f.write("space.json", DISCRETE3);
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&out), EXIT_OK);
    let v = json(&out);
    assert_eq!(v["valid"], true);
    assert_eq!(v["s_min"], 1.0);
}

#[test]
fn validate_asymmetric_space_lists_violations() {
    let f = Files::new();
    let p = f.write("space.json", r#"{"points": ["a","b"], "dist": [[0,1],[2,0]], "s": 1.0}"#);
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&out), EXIT_NEGATIVE);
    let v = json(&out);
    assert_eq!(v["valid"], false);
    assert_eq!(v["violations"][0]["axiom"], "symmetry");
    assert_eq!(v["s_min"], Value::Null);
}

#[test]
fn validate_computes_s_when_absent() {
    let f = Files::new();
    let p = f.write("space.json", r#"{"points": ["0","1","2"], "dist": [[0,1,4],[1,0,1],[4,1,0]]}"#);
    let out = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&out), EXIT_OK);
    assert_eq!(json(&out)["s"], 2.0);
}

#[test]
fn validate_input_errors() {
    let f = Files::new();
    let missing = f.0.path().join("nope.json");
    let out = run(&["validate", missing.to_str().unwrap()]);
    assert_eq!(code(&out), EXIT_INPUT);
    assert!(out.stdout.is_empty());

    for body in ["{not json", r#"{"points": ["a"], "dist": [[0, 1]]}"#, r#"{"points": ["a","b"], "dist": [[0,-1],[-1,0]]}"#, r#"{"points": ["a"], "dist": [[0]], "s": 0.5}"#] {
        let p = f.write("bad.json", body);
        let out = run(&["validate", p.to_str().unwrap()]);
        assert_eq!(code(&out), EXIT_INPUT, "{body}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn classify_worked_map() {
    let f = Files::new();
    let sp = f.write("space.json", DISCRETE3);
    let map = f.write("map.json", r#"{"table": [1, 2, 2]}"#);
    let out = run(&["classify", sp.to_str().unwrap(), map.to_str().unwrap()]);
    assert_eq!(code(&out), EXIT_OK);
    let v = json(&out);
    assert_eq!(v["pa"]["alpha_min"], 0.5);
    assert_eq!(v["pa"]["n_min"], 2);
    assert_eq!(v["banach"]["is_member"], false);
    assert_eq!(v["banach"]["beta_min"], 1.0);
    assert_eq!(v["kannan"]["is_member"], false);
    assert_eq!(v["kannan"]["threshold"], 0.5);
}

#[test]
fn classify_constant_and_identity() {
    let f = Files::new();
    let sp = f.write("space.json", DISCRETE3);
    let c = f.write("c.json", r#"{"table": [0, 0, 0]}"#);
    let v = json(&run(&["classify", sp.to_str().unwrap(), c.to_str().unwrap()]));
    for class in ["banach", "kannan", "pa"] {
        assert_eq!(v[class]["is_member"], true, "{class}");
    }

    let sp2 = f.write("two.json", r#"{"points": ["0","1"], "dist": [[0,1],[1,0]]}"#);
    let id = f.write("id.json", r#"{"table": [0, 1]}"#);
    let out = run(&["classify", sp2.to_str().unwrap(), id.to_str().unwrap()]);
    assert_eq!(code(&out), EXIT_OK);
    let v = json(&out);
    for class in ["banach", "kannan", "pa"] {
        assert_eq!(v[class]["is_member"], false, "{class}");
    }
    assert_eq!(v["kannan"]["beta_min"], "infinity");
    assert_eq!(v["pa"]["alpha_min"], Value::Null);
}

#[test]
fn classify_rejects_out_of_range_map() {
    let f = Files::new();
    let sp = f.write("space.json", DISCRETE3);
    for table in ["[1, 2, 3]", "[0, 1]"] {
        let map = f.write("map.json", &format!(r#"{{"table": {table}}}"#));
        let out = run(&["classify", sp.to_str().unwrap(), map.to_str().unwrap()]);
        assert_eq!(code(&out), EXIT_INPUT, "{table}");
    }
}

#[test]
fn census_streams_one_record_per_map() {
    let out = run(&["census", "--n", "3", "--kind", "discrete"]);
    assert_eq!(code(&out), EXIT_OK);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 28);
    assert_eq!(lines[0]["table"], serde_json::json!([0, 0, 0]));
    let summary = &lines[27]["summary"];
    assert_eq!(summary["total_maps"], 27);
    assert!(summary["cells"]["pa_not_banach"]["count"].as_u64().unwrap() >= 1);
    assert_eq!(summary["cells"]["banach_not_pa"]["count"], 0);
    assert_eq!(lines[27]["prng"], "ChaCha8Rng::seed_from_u64");
}

#[test]
fn census_single_point_and_guard() {
    let out = run(&["census", "--n", "1"]);
    assert_eq!(code(&out), EXIT_OK);
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 2);

    let out = run(&["census", "--n", "7"]);
    assert_eq!(code(&out), EXIT_INPUT);
    assert!(out.stdout.is_empty());
}

#[test]
fn census_output_is_byte_deterministic() {
    let args = ["census", "--n", "4", "--kind", "random-perturbed", "--p", "2", "--seed", "11"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), EXIT_OK);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["census", "--n", "3", "--kind", "power-metric", "--p", "2"]);
    assert_eq!(code(&c), EXIT_OK);
}

#[test]
fn solve_halving_under_squared_distance() {
    let out = run(&[
        "solve", "--map-expr", "x/2", "--metric-power", "2", "--s", "2", "--alpha", "0.25", "--x0", "1", "--tol", "1e-12",
    ]);
    assert_eq!(code(&out), EXIT_OK);
    let v = json(&out);
    let r = &v["result"];
    assert_eq!(r["status"], "converged");
    assert_eq!(r["certificate"]["certified"], true);
    assert!(r["point"].as_f64().unwrap().abs() < 1e-6);
    assert!(r["iterations"].as_u64().unwrap() <= 25);
}

#[test]
fn solve_fixed_start_and_translation() {
    let out = run(&["solve", "--map-expr", "x"]);
    assert_eq!(code(&out), EXIT_OK);
    let v = json(&out);
    assert_eq!(v["result"]["residual_trace"][0], 0.0);
    assert_eq!(v["result"]["status"], "converged");

    let out = run(&["solve", "--map-expr", "x+1", "--stop-rule", "residual", "--max-iter", "5"]);
    assert_eq!(code(&out), EXIT_NEGATIVE);
    let v = json(&out);
    assert_eq!(v["result"]["status"], "max_iter_reached");
    assert_eq!(v["result"]["residual_trace"], serde_json::json!([1.0, 1.0, 1.0, 1.0, 1.0]));
}

#[test]
fn solve_input_errors() {
    let out = run(&["solve", "--map-expr", "x ^ 2"]);
    assert_eq!(code(&out), EXIT_INPUT);
    assert!(out.stdout.is_empty());

    let out = run(&["solve", "--map-expr", "x/2", "--alpha", "0.75", "--s", "2"]);
    assert_eq!(code(&out), EXIT_INPUT);

    let out = run(&["solve", "--map-expr", "x/2", "--alpha", "0.75", "--s", "2", "--stop-rule", "residual"]);
    assert_eq!(code(&out), EXIT_OK);
    assert_eq!(json(&out)["result"]["status"], "uncertified_converged");
}

#[test]
fn solve_accepts_negative_start() {
    let out = run(&["solve", "--map-expr", "x/2", "--x0", "-3"]);
    assert_eq!(code(&out), EXIT_OK);
}

#[test]
fn worked_example_checklist_passes() {
    let out = run(&["paper"]);
    assert_eq!(code(&out), EXIT_OK);
    let v = json(&out);
    assert_eq!(v["alpha_min"], 0.5);
    assert_eq!(v["passed"], true);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"alpha_min\": 0.5"));
    assert!(String::from_utf8(out.stderr).unwrap().lines().all(|l| l.starts_with("[PASS]")));
}

#[test]
fn worked_example_checklist_fails_on_corrupted_expectation() {
    let out = cmd_paper(&Expectations { alpha_min: 0.75, ..Default::default() });
    assert_eq!(out.exit_code, EXIT_NEGATIVE);
    assert!(out.summary.contains("[FAIL]"));
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["passed"], false);
}
