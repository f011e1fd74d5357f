mod common;

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use common::{EXAMPLE_L0, EXAMPLE_L1};
use fosep::cli::{run, Outcome};
use fosep::omega::{algebras, OmegaJson};

fn schema_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schemas")
}

fn fosep(args: &[&str]) -> Outcome {
    let mut full = vec!["fosep"];
    full.extend_from_slice(args);
    run(full)
}

/// Runs with `--json --no-timing`, checks the report against its schema
/// and returns it.
fn report(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--json", "--no-timing"]);
    let out = fosep(&full);
    let v: Value = serde_json::from_str(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: not JSON ({e}): {}", out.stdout));
    let name = if v.get("error").is_some() {
        "error".to_string()
    } else {
        v["command"].as_str().unwrap().to_string()
    };
    let schema: Value =
        serde_json::from_str(&fs::read_to_string(schema_dir().join(format!("{name}.schema.json"))).unwrap())
            .unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} violates {name}.schema.json: {errors:?}\n{v}");
    (out.code, v)
}

fn omega_file(dir: &Path, name: &str) -> PathBuf {
    let (_, m) = algebras::all().into_iter().find(|(n, _)| *n == name).unwrap();
    let path = dir.join(format!("{name}.json"));
    fs::write(&path, serde_json::to_string(&OmegaJson::from_morphism(&m)).unwrap()).unwrap();
    path
}

#[test]
fn running_example_is_not_separable() {
    let (code, v) = report(&["separate", "--regex", EXAMPLE_L0, EXAMPLE_L1]);
    assert_eq!(code, 0);
    assert_eq!(v["separable"], false);
    assert_eq!(v["witness"]["words"].as_array().unwrap().len(), 2);
}

#[test]
fn first_letter_languages_are_separable() {
    let (code, v) = report(&["separate", "--regex", "a(a|b)*", "b(a|b)*", "--exit-status"]);
    assert_eq!(code, 0);
    assert_eq!(v["separable"], true);
    assert!(v.get("witness").is_none());
}

#[test]
fn exit_status_codes() {
    let ok = fosep(&["separate", "--regex", "a(a|b)*", "b(a|b)*", "--exit-status"]);
    assert_eq!(ok.code, 0);
    let no = fosep(&["separate", "--regex", "(aa)*a", "a(aa)*a", "--exit-status"]);
    assert_eq!(no.code, 1);
    // without the flag a negative answer still exits 0
    let quiet = fosep(&["separate", "--regex", "(aa)*a", "a(aa)*a"]);
    assert_eq!(quiet.code, 0);
    let bad = fosep(&["separate", "--regex", "a(b", "b"]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("error"));
}

#[test]
fn malformed_regex_reports_error_json() {
    let (code, v) = report(&["separate", "--regex", "a(b", "b"]);
    assert_eq!(code, 2);
    assert_eq!(v["command"], "separate");
}

#[test]
fn reports_are_deterministic() {
    let cases: [&[&str]; 4] = [
        &["separate", "--regex", EXAMPLE_L0, EXAMPLE_L1],
        &["synthesize", "--regex", "a(a|b)*", "b(a|b)*"],
        &["saturate", "--seed", "3"],
        &["membership", "--regex", "(ab)+"],
    ];
    for args in cases {
        let mut full = args.to_vec();
        full.extend(["--json", "--no-timing"]);
        let a = fosep(&full);
        let b = fosep(&full);
        assert_eq!(a, b, "{args:?}");
    }
}

#[test]
fn timing_is_reported_unless_disabled() {
    let out = fosep(&["membership", "--regex", "(ab)+", "--json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert!(v["elapsedMs"].is_u64());
}

#[test]
fn synthesize_writes_and_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi.txt");
    let (code, v) = report(&["synthesize", "--regex", "a(a|b)*", "b(a|b)*", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"]["passed"], true);
    assert_eq!(v["verified"]["withinBound"], true);
    let written = fs::read_to_string(&out).unwrap();
    assert_eq!(written.trim(), v["formula"].as_str().unwrap());

    let (code, check) = report(&["verify", "--formula", out.to_str().unwrap(), "--regex", "a(a|b)*", "b(a|b)*"]);
    assert_eq!(code, 0);
    assert_eq!(check["passed"], true);
}

#[test]
fn synthesize_rejects_inseparable_inputs() {
    let (code, v) = report(&["synthesize", "--regex", "(aa)*a", "a(aa)*a"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["elements"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_finds_counterexamples() {
    let (code, v) = report(&[
        "verify",
        "--formula-text",
        "E x1. a(x1)",
        "--regex",
        "a(a|b)*",
        "b(a|b)*",
        "--max-len",
        "3",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], false);
    assert_eq!(v["l1Counterexamples"][0], "ba");
}

#[test]
fn membership_examples() {
    let (_, v) = report(&["membership", "--regex", "(aa)*"]);
    assert_eq!(v["definable"], false);
    assert_eq!(v["syntacticSize"], 2);
    let (_, v) = report(&["membership", "--regex", "(ab)+"]);
    assert_eq!(v["definable"], true);
}

#[test]
fn saturate_trivial_semigroup_gives_singletons() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.txt");
    fs::write(&path, "semigroup 1\n0\ngenerators\na 0\n").unwrap();
    let (code, v) = report(&["saturate", "--semigroup", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["maximalSets"], serde_json::json!([[0]]));
    assert_eq!(v["onlySingletons"], true);
}

#[test]
fn saturate_all_variants_agree() {
    let (code, v) = report(&["saturate", "--seed", "11", "--variant", "all"]);
    assert_eq!(code, 0);
    assert_eq!(v["variant"], "all");
}

#[test]
fn eval_exit_status_reflects_truth() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("phi.txt");
    fs::write(&path, "E x1. E x2. x1<x2 & a(x1) & b(x2)\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(fosep(&["eval", "--formula", p, "--word", "ab", "--exit-status"]).code, 0);
    assert_eq!(fosep(&["eval", "--formula", p, "--word", "ba", "--exit-status"]).code, 1);
    let (code, v) = report(&["eval", "--formula", p, "--word", "aab"]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], true);
    assert_eq!(v["rank"], 2);
}

#[test]
fn eval_rejects_free_variables() {
    let out = fosep(&["eval", "--formula-text", "a(x1)", "--word", "a"]);
    assert_eq!(out.code, 2);
}

#[test]
fn omega_separate_examples() {
    let dir = tempfile::tempdir().unwrap();
    let sep = omega_file(dir.path(), "infinitely-many-a");
    let (code, v) = report(&["omega-separate", "--omega", sep.to_str().unwrap(), "--exit-status"]);
    assert_eq!(code, 0);
    assert_eq!(v["separable"], true);
    let parity = omega_file(dir.path(), "parity-prefix");
    let (code, v) = report(&["omega-separate", "--omega", parity.to_str().unwrap(), "--exit-status"]);
    assert_eq!(code, 1);
    assert_eq!(v["separable"], false);
    assert!(v["witness"]["elements"].is_array());
}

#[test]
fn schemas_are_valid_json_schema() {
    for entry in fs::read_dir(schema_dir()).unwrap() {
        let path = entry.unwrap().path();
        let schema: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
        assert!(jsonschema::meta::is_valid(&schema), "{}", path.display());
    }
}
