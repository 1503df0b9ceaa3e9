use std::path::PathBuf;

use serde_json::Value;
use witt_cli::run;

fn instance(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn witt(args: &[&str]) -> (i32, Value) {
    let argv = std::iter::once("witt").chain(args.iter().copied());
    let out = run(argv);
    let json = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout));
    (out.code, json)
}

fn schema() -> jsonschema::Validator {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "schemas", "report.schema.json"]
        .iter()
        .collect();
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("witt-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn validate_reports_case_three() {
    let (code, r) = witt(&["validate", &instance("z3.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["case"], "Three");
    assert_eq!(r["result"]["jacobi"]["verdict"], "pass");
}

#[test]
fn derivations_on_z4() {
    let (code, r) = witt(&["derivations", &instance("z4.json")]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["dim"], 4);
    assert_eq!(r["result"]["equivalence"]["equivalent"], true);
}

#[test]
fn unrestricted_mutation_is_rejected_in_case_two() {
    let (code, r) = witt(&[
        "tpp",
        "verify",
        &instance("z2.json"),
        "--product",
        r#"{"variant":"mutation","b":"e0:1,e1:1"}"#,
    ]);
    assert_eq!(code, 1);
    let leibniz = &r["result"]["axioms"]["transposed_leibniz"];
    assert_eq!(leibniz["verdict"], "fail");
    assert!(leibniz["witness"].is_array());
    assert_eq!(r["result"]["derivation_route"], "fail");
}

#[test]
fn classified_products_verify() {
    let (code, r) = witt(&[
        "tpp",
        "verify",
        &instance("z4.json"),
        "--product",
        r#"{"variant":"case2","b":"e0:1,e1:1/2-1i"}"#,
    ]);
    assert_eq!(code, 0, "{r}");
    let (code, _) = witt(&[
        "tpp",
        "verify",
        &instance("witt.json"),
        "--product",
        r#"{"variant":"mutation","b":"e-1:2,e1:1i"}"#,
        "--radius",
        "4",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn tpp_classify_recovers_parameters() {
    let (code, r) = witt(&[
        "tpp",
        "classify",
        &instance("z2.json"),
        "--product",
        r#"{"variant":"case2","b":"e0:2,e1:3"}"#,
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["parameters"]["variant"], "case2");
    assert_eq!(r["result"]["parameters"]["b"], "e0:2,e1:3");

    let (code, r) = witt(&[
        "tpp",
        "classify",
        &instance("z4.json"),
        "--product",
        r#"{"variant":"mutation","b":"e1:1"}"#,
    ]);
    assert_eq!(code, 1);
    assert!(r["error"].as_str().unwrap().contains("not a verified"));

    let (code, _) = witt(&[
        "tpp",
        "classify",
        &instance("witt.json"),
        "--product",
        r#"{"variant":"mutation","b":"e0:1"}"#,
    ]);
    assert_eq!(code, 2, "infinite groups need --b");
    let (code, _) = witt(&[
        "tpp",
        "classify",
        &instance("witt.json"),
        "--product",
        r#"{"variant":"mutation","b":"e0:1"}"#,
        "--b",
        "e0:1",
        "--radius",
        "3",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn windowed_derivations() {
    let (code, r) = witt(&[
        "derivations",
        &instance("witt.json"),
        "--degrees",
        "-2..2",
        "--radius",
        "6",
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["degrees"].as_array().unwrap().len(), 5);
    let (code, r) = witt(&["derivations", &instance("witt.json"), "--radius", "1"]);
    assert_eq!(code, 3, "a radius-1 window cannot witness the constancy hypotheses");
    assert_eq!(r["verdict"], "inconclusive");
}

#[test]
fn homlie_command() {
    let (code, r) = witt(&["homlie", &instance("witt.json"), "--map", "shift:3", "--radius", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["result"]["half_derivation"], "pass");
    let (code, r) = witt(&["homlie", &instance("z3.json"), "--map", "shift:1"]);
    assert_eq!(code, 1);
    let h = &r["result"]["homlie"];
    assert!(h["checked"].as_u64().unwrap() + h["skipped"].as_u64().unwrap() <= 27);
    let (code, r) = witt(&["homlie", &instance("z4.json"), "--map", "shift0:1", "--literal-form"]);
    assert_ne!(code, 2);
    assert_eq!(r["result"]["form"], "literal");
}

#[test]
fn input_errors_exit_2() {
    let missing = instance("does-not-exist.json");
    assert_eq!(run(["witt", "validate", missing.as_str()]).code, 2);
    assert_eq!(run(["witt", "frobnicate"]).code, 2);
    let bad_scalar = scratch(
        "bad.json",
        r#"{"group":{"rank":0,"torsion":[2]},"f":{"kind":"table","values":{"0":"0","1":"1+i"}}}"#,
    );
    assert_eq!(run(["witt", "validate", bad_scalar.as_str()]).code, 2);
    let z2 = instance("z2.json");
    let (code, r) = witt(&["tpp", "verify", &z2, "--product", r#"{"variant":"mutation","b":"e7"}"#]);
    assert_eq!(code, 2);
    assert_eq!(r["verdict"], "error");
    let (code, _) = witt(&["derivations", &z2, "--degrees", "0..1"]);
    assert_eq!(code, 2);
    let (code, _) = witt(&["homlie", &z2, "--map", "rotate:1"]);
    assert_eq!(code, 2);
}

#[test]
fn invalid_functions_fail_with_hint_or_witness() {
    let shifted = scratch(
        "shifted.json",
        r#"{"group":{"rank":0,"torsion":[2]},"f":{"kind":"table","values":{"0":"1","1":"2"}}}"#,
    );
    let (code, r) = witt(&["validate", &shifted]);
    assert_eq!(code, 1);
    assert!(r["result"]["validation"]["hint"].as_str().unwrap().contains("f - f(0)"));
    let broken = scratch(
        "broken.json",
        r#"{"group":{"rank":0,"torsion":[4]},"f":{"kind":"table","values":{"0":"0","1":"1","2":"2","3":"5"}}}"#,
    );
    let (code, r) = witt(&["validate", &broken]);
    assert_eq!(code, 1);
    assert!(r["result"]["validation"]["witness"].is_array());
    let (code, _) = witt(&["derivations", &broken]);
    assert_eq!(code, 1);
}

#[test]
fn abelian_instances_are_outside_the_classification() {
    let flat = scratch(
        "flat.json",
        r#"{"group":{"rank":0,"torsion":[3]},"f":{"kind":"table","values":{"0":"0","1":"0","2":"0"}}}"#,
    );
    let (code, r) = witt(&["validate", &flat]);
    assert_eq!(code, 0);
    assert_eq!(r["case"], "Abelian");
    let (code, _) = witt(&["derivations", &flat]);
    assert_eq!(code, 2);
}

#[test]
fn timing_is_opt_in() {
    let z3 = instance("z3.json");
    let (_, r) = witt(&["classify", &z3]);
    assert!(r.get("timing_ms").is_none());
    let (_, r) = witt(&["classify", &z3, "--timing", "--threads", "1"]);
    assert!(r["timing_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn reports_match_schema_and_text_verdicts() {
    let validator = schema();
    let z2 = instance("z2.json");
    let z3 = instance("z3.json");
    let z4 = instance("z4.json");
    let w = instance("witt.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["validate", &z3],
        vec!["classify", &z4],
        vec!["classify", &w],
        vec!["derivations", &z4],
        vec!["derivations", &w, "--degrees", "-1..1", "--radius", "4"],
        vec![
            "tpp",
            "verify",
            &z2,
            "--product",
            r#"{"variant":"mutation","b":"e0:1,e1:1"}"#,
        ],
        vec!["tpp", "random", &z4, "--trials", "3", "--seed", "5"],
        vec!["tpp", "random", &z3, "--trials", "2"],
        vec!["tpp", "classify", &z2, "--product", r#"{"variant":"case2","b":"e1:1"}"#],
        vec!["homlie", &z4, "--map", "shift:2"],
        vec!["report", &z4, "--trials", "2"],
        vec!["validate", "nope.json"],
    ];
    for args in runs {
        let (code, json) = witt(&args);
        let errors: Vec<String> = validator.iter_errors(&json).map(|e| e.to_string()).collect();
        assert!(errors.is_empty(), "{args:?}: {errors:?}");

        let mut text_args = args.clone();
        text_args.extend(["--format", "text"]);
        let text = run(std::iter::once("witt").chain(text_args.iter().copied()));
        assert_eq!(text.code, code, "{args:?}");
        let verdict = json["verdict"].as_str().unwrap();
        assert!(
            text.stdout.contains(&format!("\nverdict: {verdict}\n")),
            "{args:?}: {}",
            text.stdout
        );
    }
}

#[test]
fn report_aggregates_sections() {
    let (code, r) = witt(&["report", &instance("z4.json"), "--trials", "3"]);
    assert_eq!(code, 0);
    for section in ["validate", "classify", "derivations", "tpp_random", "homlie_family"] {
        assert_eq!(r["result"][section]["verdict"], "pass", "{section}");
    }
    let (code, r) = witt(&["report", &instance("z3.json"), "--trials", "3"]);
    assert_eq!(code, 1);
    assert_eq!(r["result"]["derivations"]["verdict"], "pass");
    assert_eq!(r["result"]["tpp_random"]["verdict"], "fail");
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_witt");
    let status = std::process::Command::new(exe)
        .args(["validate", &instance("z3.json")])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(0));
    let status = std::process::Command::new(exe).args(["validate"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(!status.stderr.is_empty());
}
