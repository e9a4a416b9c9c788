use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hornkit_cli::wire::SystemSpec;
use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn hornkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hornkit")).args(args).env_remove("HORNKIT_WINDOW").output().expect("spawn hornkit")
}

fn run_json(args: &[&str]) -> Value {
    let out = hornkit(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hornkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_zonotope() {
    let r = run_json(&["analyze", &path("zonotope.json"), "--window", "24"]);
    assert_eq!(r["rank"], 31);
    assert_eq!(r["persistent_dim"], 6);
    assert_eq!(r["classification"]["kind"], "Zonotope");
    assert_eq!(r["independent_polynomials"], 31);
    assert_eq!(r["rank_attained"], true);
    assert_eq!(r["persistent_solutions"].as_array().unwrap().len(), 6);
    assert!(r["s_per_vertex"].as_array().unwrap().iter().all(|v| v == 25));
}

#[test]
fn analyze_triangle_sides() {
    let r = run_json(&["analyze", &path("triangle_sides.json")]);
    assert_eq!(r["rank"], 40);
    assert_eq!(r["persistent_dim"], 5);
    assert_eq!(r["classification"]["kind"], "TrianglePlusSegments");
}

#[test]
fn malformed_input_exits_2() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"matrix\": [[1, 2]").unwrap();
    let out = hornkit(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "parse");
    assert_eq!(hornkit(&["analyze", "/nonexistent/system.json"]).status.code(), Some(2));
    assert_eq!(hornkit(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn confluent_needs_flag() {
    let out = hornkit(&["analyze", &path("atomic_32_43.json")]);
    assert_eq!(out.status.code(), Some(3));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "precondition");
    let r = run_json(&["analyze", &path("atomic_32_43.json"), "--allow-confluent"]);
    assert_eq!(r["nonconfluent"], false);
    assert!(r["rank"].is_null());
}

fn coefficients(sol: &Value) -> Vec<String> {
    sol["terms"].as_array().unwrap().iter().map(|t| t["coefficient"].as_str().unwrap().to_string()).collect()
}

#[test]
fn solve_atomic() {
    let r = run_json(&["solve", &path("atomic_32_43.json")]);
    let sols = r["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 8);
    assert!(sols.iter().all(|s| s["verified"] == true && s["persistent"] == true));
    assert_eq!(sols.iter().filter(|s| s["terms"].as_array().unwrap().len() == 1).count(), 6);
    assert!(sols.iter().any(|s| coefficients(s) == ["1", "-1/3"]));
    assert!(sols.iter().any(|s| coefficients(s) == ["1", "-1", "3", "-1/4"]));
}

#[test]
fn solve_simplex_and_zonotope() {
    let r = run_json(&["solve", &path("triangle_simplex.json")]);
    assert_eq!(r["solutions"].as_array().unwrap().len(), 4);
    let r = run_json(&["solve", &path("zonotope.json"), "--window", "24"]);
    assert_eq!(r["solutions"].as_array().unwrap().len(), 31);
    assert_eq!(r["rank_attained"], true);
}

#[test]
fn window_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hornkit"))
        .args(["solve", &path("triangle_simplex.json")])
        .env("HORNKIT_WINDOW", "12")
        .output()
        .unwrap();
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["window"], 12);
    let r = run_json(&["series", &path("example_2_1.json"), "--pair", "1,2"]);
    assert_eq!(r["window"], 8);
    assert_eq!(r["verified"], true);
}

#[test]
fn verify_examples() {
    let r =
        run_json(&["verify", &path("triangle_simplex.json"), "--solution", &path("triangle_simplex.solutions.json")]);
    assert!(r.as_array().unwrap().iter().all(|v| v["is_solution"] == true));
    let x1 = tmp("x1.json");
    std::fs::write(&x1, r#"{"terms": [{"exponent": ["1", "0"], "coefficient": "1"}]}"#).unwrap();
    let r = run_json(&["verify", &path("triangle_simplex.json"), "--solution", x1.to_str().unwrap()]);
    assert_eq!(r["is_solution"], false);
    assert!(!r["residuals"].as_array().unwrap().is_empty());
    let x2 = tmp("x2.json");
    std::fs::write(&x2, r#"{"terms": [{"exponent": ["0", "1"], "coefficient": "1"}]}"#).unwrap();
    let r = run_json(&["verify", &path("zonotope.json"), "--solution", x2.to_str().unwrap()]);
    assert_eq!(r["is_solution"], true);
    assert_eq!(r["is_persistent"], true);
}

#[test]
fn render_is_byte_stable() {
    for what in ["polygon", "supports"] {
        let a = tmp(&format!("{}-a.svg", what));
        let b = tmp(&format!("{}-b.svg", what));
        for p in [&a, &b] {
            let out = hornkit(&["render", &path("zonotope.json"), "--what", what, "--out", p.to_str().unwrap()]);
            assert!(out.status.success());
        }
        let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
        assert_eq!(x, y);
        assert!(x.starts_with(b"<svg"));
    }
    assert_eq!(hornkit(&["render", &path("zonotope.json"), "--what", "amoeba"]).status.code(), Some(2));
}

#[test]
fn classify_and_rank() {
    let r = run_json(&["classify", &path("quadrilateral.json")]);
    assert_eq!(r["kind"], "Other");
    assert_eq!(r["maximally_reducible"], false);
    let r = run_json(&["rank", &path("example_3_1.json")]);
    assert_eq!(r["rank"], 2);
    assert_eq!(r["persistent_dim"], 1);
}

#[test]
fn suggest_rejects_other_polygons() {
    assert_eq!(hornkit(&["suggest-params", &path("quadrilateral.json")]).status.code(), Some(3));
}

#[test]
fn fixtures_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap().to_string_lossy().into_owned();
        if name.ends_with(".expected.json") || name.ends_with(".solutions.json") {
            continue;
        }
        let text = std::fs::read_to_string(&p).unwrap();
        let spec = SystemSpec::from_json(&text).unwrap();
        assert_eq!(spec.to_canonical_json().unwrap(), text, "{}", name);
        n += 1;
    }
    assert_eq!(n, 8);
}
