use std::fs;
use std::path::PathBuf;

use hermlie::cli::run;
use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/examples/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, contents: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn hermlie(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["hermlie"];
    full.extend_from_slice(args);
    let out = run(full);
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json)
}

#[test]
fn check_exit_codes_follow_the_verdicts() {
    let (a, j) = (data("two_rotations.json"), data("aff_h3_r_g_tilde.json"));
    let (code, out) = hermlie(&["check", &a, &j]);
    assert_eq!(code, 0);
    assert_eq!(out["verdicts"]["kahler"], true);

    let (a, g) = (data("aff_h3_r.json"), data("aff_h3_r_g_tilde.json"));
    assert_eq!(hermlie(&["check", &a, &g, "--condition", "skt"]).0, 0);
    assert_eq!(hermlie(&["check", &a, &g, "--condition", "kahler"]).0, 1);
    assert_eq!(hermlie(&["check", &a, &g, "--condition", "balanced"]).0, 1);
    let (code, out) = hermlie(&["check", &a, &g]);
    assert_eq!(code, 1);
    assert_eq!(out["verdicts"]["skt"], true);
    assert_eq!(out["verdicts"]["balanced"], false);
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["hermlie", "check", &data("g511.json"), &data("aff_h3_r_g_tilde.json")];
    let a = run(args);
    let b = run(args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["hermlie", "shear", &data("random_shear.json"), "--cross-check"];
    assert_eq!(run(args).stdout, run(args).stdout);
}

#[test]
fn describe_renders_the_algebra() {
    let (code, out) = hermlie(&["describe", &data("aff_h3_r.json")]);
    assert_eq!(code, 0);
    assert_eq!(out["algebra"]["dim"], 6);
    assert!(out.to_string().contains("(0,21,0,0,43,0)"));
}

#[test]
fn shear_commands() {
    let (code, out) = hermlie(&["shear", &data("zero_shear.json")]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(hermlie(&["shear", &data("random_shear.json"), "--cross-check"]).0 < 2, true);
    assert_eq!(hermlie(&["shear", &data("random_shear.json"), "--kind", "build"]).0, 0);
}

#[test]
fn malformed_input_exits_with_two() {
    let bad = scratch("bad.json", "{ not json");
    assert_eq!(hermlie(&["describe", &bad]).0, 2);
    assert_eq!(hermlie(&["describe", "/nonexistent/alg.json"]).0, 2);
    let jacobi = scratch("jacobi.json", r#"{ "dim": 3, "salamon": "(13,0,12)" }"#);
    assert_eq!(hermlie(&["describe", &jacobi]).0, 2);
    assert_eq!(hermlie(&["frobnicate"]).0, 2);
    assert_eq!(hermlie(&["check", &data("two_rotations.json")]).0, 2);
}

#[test]
fn bad_complex_structure_exits_with_two() {
    let j = scratch(
        "not_j.json",
        r#"{ "J": [["1","0","0","0","0","0"],["0","1","0","0","0","0"],["0","0","1","0","0","0"],
                  ["0","0","0","1","0","0"],["0","0","0","0","1","0"],["0","0","0","0","0","1"]],
             "metric": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]] }"#,
    );
    let out = run(["hermlie", "check", &data("two_rotations.json"), &j]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("minus the identity"), "{}", out.stderr);
    // a genuine complex structure that is not integrable on this algebra
    let odd = scratch("odd_j.json", r#"{ "J_pairs": [[1, 3], [2, 4], [5, 6]],
             "metric": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]] }"#);
    let out = run(["hermlie", "check", &data("two_rotations.json"), &odd]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("integrable"), "{}", out.stderr);
}

#[test]
fn incompatible_metric_exits_with_two() {
    let g = scratch(
        "incompatible.json",
        r#"{ "J_pairs": [[1, 2], [3, 4], [5, 6]],
             "metric": [[2,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0],[0,0,0,1,0,0],[0,0,0,0,1,0],[0,0,0,0,0,1]] }"#,
    );
    let out = run(["hermlie", "check", &data("two_rotations.json"), &g]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("compatible"), "{}", out.stderr);
}

#[test]
fn catalog_commands() {
    let (code, out) = hermlie(&["catalog", "list"]);
    assert_eq!(code, 0);
    assert!(out.to_string().contains("3aff_R"));
    let (code, out) = hermlie(&["catalog", "show", "3aff_R"]);
    assert_eq!(code, 0, "{out}");
    let (code, _) = hermlie(&["catalog", "family", "g_{5,17}", "--param", "alpha=0", "--param", "beta=1", "--param", "gamma=1/2"]);
    assert_eq!(code, 0);
    assert_eq!(hermlie(&["catalog", "family", "g_{5,17}", "--param", "alpha=0", "--param", "beta=1", "--param", "gamma=0"]).0, 2);
    assert_eq!(hermlie(&["catalog", "show", "no such entry"]).0, 2);
}

#[test]
fn search_reports_a_verified_witness() {
    let cfg = scratch("search.json", r#"{ "seeds": [0, 1], "max_iterations": 1500 }"#);
    let (code, out) = hermlie(&[
        "search",
        &data("aff_h3_r.json"),
        &data("standard_j6.json"),
        "--target",
        "skt",
        "--config",
        &cfg,
    ]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out["exact_verified"], true);
}

#[test]
fn verify_single_criterion_as_json() {
    let (code, out) = hermlie(&["verify-paper", "--only", "1", "--json"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.to_string().contains("\"passed\":true"));
}
