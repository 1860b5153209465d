use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turnover"))
        .args(args)
        .env_remove("TURNOVER_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    serde_json::from_str(&stdout(&all)).expect("one JSON document")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key))
        .unwrap_or_else(|| panic!("no line starting {key:?} in {text}"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn area_classes() {
    assert_eq!(stdout(&["area", "2", "4", "5"]), "hyperbolic, area = 0.3141592653\n");
    assert_eq!(stdout(&["area", "3", "3", "3"]), "euclidean\n");
    assert_eq!(stdout(&["area", "2", "2", "3"]), "spherical\n");
    assert_eq!(stdout(&["area", "5", "2", "4"]), "hyperbolic, area = 0.3141592653\n");
    assert_eq!(stdout(&["classify", "2", "3", "7"]), "hyperbolic\n");
    assert_eq!(code(&["area", "1", "4", "5"]), 2);
    assert_eq!(code(&["area", "2", "4"]), 2);
}

#[test]
fn delta_values() {
    let text = stdout(&["delta", "5", "5"]);
    assert!((field(&text, "delta = ") - 0.736175).abs() < 1e-6);
    let text = stdout(&["delta", "4", "5"]);
    assert!((field(&text, "delta = ") - 0.626869).abs() < 1e-6);
    assert_eq!(code(&["delta", "2", "2"]), 2);
}

#[test]
fn delta_7_7_matches_library() {
    let v = json(&["delta", "7", "7"]);
    let want = turnover_core::collars::delta_nn(7).unwrap();
    assert_eq!(v["delta"].as_f64().unwrap(), want);
}

#[test]
fn text_is_rendered_from_json() {
    let v = json(&["bounds", "2", "4", "5"]);
    let text = stdout(&["bounds", "2", "4", "5"]);
    let got = field(&text, "volume bound with boundary: ");
    let want = v["upper_bound_with_boundary"].as_f64().unwrap();
    assert!((got - want).abs() < 1e-9 * want);
    assert!(got <= want);
}

#[test]
fn analyze_245() {
    let text = stdout(&["analyze", "2", "4", "5"]);
    assert!(text.ends_with("conclusion: NoEmbeddedTurnovers\n"), "{text}");
    let v = json(&["analyze", "2", "4", "5"]);
    assert_eq!(v["conclusion"], "NoEmbeddedTurnovers");
    let sigs: Vec<&Value> = v["candidates"].as_array().unwrap().iter().map(|c| &c["sig"]).collect();
    assert_eq!(sigs, [&serde_json::json!([2, 4, 5]), &serde_json::json!([3, 3, 4])]);
    let v = json(&["analyze", "2", "4", "5", "--no-refinements"]);
    assert_eq!(v["conclusion"], "CandidatesRemain");
}

#[test]
fn analyze_report_decodes() {
    let v = json(&["analyze", "2", "4", "5"]);
    let report: turnover_core::engine::AnalysisReport = serde_json::from_value(v).unwrap();
    assert_eq!(report.open_cases().len(), 0);
}

#[test]
fn analyze_prism_extension() {
    let v = json(&["analyze", "2", "4", "7", "--ext", "2"]);
    assert_eq!(v["conclusion"], "CandidatesRemain");
    let has_237 = v["candidates"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["sig"] == serde_json::json!([2, 3, 7]));
    assert!(has_237);
}

#[test]
fn analyze_rejects_non_hyperbolic() {
    assert_eq!(code(&["analyze", "2", "3", "6"]), 2);
    assert_eq!(code(&["analyze", "2", "2", "5"]), 2);
    assert_eq!(code(&["analyze", "2", "4", "5", "--ext", "0"]), 2);
}

#[test]
fn rho3_values() {
    let text = stdout(&["rho3", "--theta", "0.7853981634"]);
    assert!((field(&text, "volume = ") - 2.573105).abs() < 1e-6);
    let text = stdout(&["rho3", "--theta", "0"]);
    assert!((field(&text, "volume = ") - 3.663862).abs() < 1e-6);
    let v = json(&["rho3", "--edge", "1"]);
    assert_eq!(v["edge_length"].as_f64(), Some(1.0));
    assert_eq!(code(&["rho3", "--theta", "1.1"]), 2);
    assert_eq!(code(&["rho3", "--theta", "-0.1"]), 2);
    assert_eq!(code(&["rho3"]), 2);
    assert_eq!(code(&["rho3", "--theta", "0.5", "--edge", "1"]), 2);
}

#[test]
fn room_check_sweep() {
    let text = stdout(&["room-check", "--seed", "1", "--count", "100"]);
    assert!(text.starts_with("violations: 0\n"), "{text}");
    assert_eq!(code(&["room-check", "--count", "0"]), 2);
}

#[test]
fn room_check_constant_ceiling_is_tight() {
    let v = json(&["room-check", "--count", "1", "--constant", "0.75"]);
    assert_eq!(v["violations"], 0);
    assert!(v["worst_margin"].as_f64().unwrap().abs() < 1e-8);
    assert_eq!(code(&["room-check", "--constant", "-1"]), 2);
}

#[test]
fn seeds_are_deterministic() {
    let a = stdout(&["--json", "room-check", "--seed", "7", "--count", "3"]);
    let b = stdout(&["--json", "room-check", "--seed", "7", "--count", "3"]);
    assert_eq!(a, b);
}

#[test]
fn tolerance_flag_and_env() {
    assert_eq!(code(&["--tol", "-1", "area", "2", "4", "5"]), 2);
    assert_eq!(code(&["--tol", "0", "area", "2", "4", "5"]), 2);
    let out = Command::new(env!("CARGO_BIN_EXE_turnover"))
        .args(["area", "2", "4", "5"])
        .env("TURNOVER_TOL", "nope")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_turnover"))
        .args(["room-check", "--count", "2"])
        .env("TURNOVER_TOL", "1e-9")
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn orders_and_candidates() {
    let v = json(&["orders", "2", "4", "5"]);
    assert_eq!(v["orders"], serde_json::json!([2, 3, 4, 5]));
    let v = json(&["candidates", "2", "3", "7"]);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 1);
    let v = json(&["candidates", "2", "3", "7", "--orders", "2,3,4,5,6,7,8"]);
    assert_eq!(v["candidates"].as_array().unwrap().len(), 2);
    assert_eq!(code(&["candidates", "2", "3", "7", "--orders", "1,3"]), 2);
}

#[test]
fn tables() {
    assert_eq!(json(&["registry"]).as_array().unwrap().len(), 6);
    assert_eq!(json(&["table"]).as_array().unwrap().len(), 14);
    assert_eq!(stdout(&["supergroups", "2", "4", "5"]), "maximal\n");
    let v = json(&["supergroups", "7", "7", "7"]);
    assert!(!v["supergroups"].as_array().unwrap().is_empty());
}
