use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvspace")).args(args).env_remove("CURVSPACE_SEED").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const QUARTER: &str = r#"{"start":{"x":0,"y":0,"theta":0},"segments":[{"kappa":1,"length":1.5707963}]}"#;

#[test]
fn segment_below_threshold_has_two_components() {
    let out = run(&["components", "--q", "3", "--theta", "0", "--k1", "-1", "--k2", "1"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["count"], 2);
    let out = run(&["components", "--q", "5", "--theta", "0", "--k1", "-1", "--k2", "1"]);
    assert_eq!(json_of(&out)["count"], 1);
}

#[test]
fn quarter_circle_end_frame() {
    let out = run(&["endframe", "--curve", QUARTER]);
    let v = json_of(&out);
    assert!((v["position"]["x"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!((v["position"]["y"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!((v["heading"].as_f64().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-6);
}

#[test]
fn critical_circle_boundary() {
    let out = run(&["region", "--q", "4", "--theta", "0", "--which", "critical", "--variant", "open"]);
    assert_eq!(json_of(&out)["status"], "boundary");
}

#[test]
fn infinite_bounds_accepted() {
    let out = run(&["components", "--q", "3", "--theta", "1", "--k1", "-inf", "--k2", "inf"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["count"], 1);
}

#[test]
fn usage_and_validation_errors_exit_2() {
    for args in [
        vec!["components", "--q", "3", "--theta", "zero"],
        vec!["components", "--q", "3", "--theta", "0", "--k1", "1", "--k2", "-1"],
        vec!["frobnicate"],
        vec!["endframe", "--curve", "{"],
        vec!["surface", "--kind", "torus", "--a", "3", "--v", "0,0,0"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        let err: Value = serde_json::from_slice(&out.stderr).unwrap();
        assert!(err["error"]["message"].is_string());
    }
}

#[test]
fn random_is_deterministic() {
    let a = run(&["random", "--seed", "11", "--segs", "5"]);
    let b = run(&["random", "--seed", "11", "--segs", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_curvspace"))
        .args(["random", "--segs", "5"])
        .env("CURVSPACE_SEED", "11")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
    assert_ne!(run(&["random", "--seed", "12", "--segs", "5"]).stdout, a.stdout);
}

#[test]
fn dubins_agrees_with_oracle() {
    let v = json_of(&run(&["dubins", "--q", "3,1,0.5"]));
    assert!((v["length"].as_f64().unwrap() - v["oracle_length"].as_f64().unwrap()).abs() < 1e-6);
}

#[test]
fn excavator_trace_ends_at_shortest_path() {
    let c = run(&["random", "--seed", "3", "--segs", "3", "--k1", "-0.5", "--k2", "0.5"]);
    let curve = String::from_utf8(c.stdout).unwrap();
    let v = json_of(&run(&["deform", "excavator", "--curve", curve.trim(), "--steps", "4"]));
    let diags = v["diagnostics"].as_array().unwrap();
    assert_eq!(diags.len(), 5);
    for d in diags {
        assert!(d["end_drift"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn svg_written_alongside_json() {
    let path = std::env::temp_dir().join(format!("curvspace-cli-{}.svg", std::process::id()));
    let out = run(&["endframe", "--curve", QUARTER, "--svg", path.to_str().unwrap()]);
    assert!(out.status.success());
    let svg = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<path ").count(), 1);
}

#[test]
fn verify_suite_reports() {
    let out = run(&["verify", "components"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}
