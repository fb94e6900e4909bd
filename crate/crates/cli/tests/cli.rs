//! End-to-end tests of the `mm` binary: golden outputs, exit codes, and
//! file handling. Everything runs through the compiled binary so the
//! argument surface and the process contract are what is being tested.

use std::process::{Command, Output};

fn mm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn poly_prints_the_golden_quadratic() {
    let out = mm(&["poly", "--r", "1", "--beta", "1", "--c", "1/2", "--n", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"{"poly":["2","-5","1"]}"#);
}

#[test]
fn eval_prints_the_value() {
    let out = mm(&[
        "eval", "--r", "1", "--beta", "1", "--c", "1/2", "--n", "2", "--x", "2",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), r#"{"value":"-4"}"#);
}

#[test]
fn duplicate_weights_are_a_usage_error() {
    let out = mm(&["poly", "--r", "2", "--beta", "1", "--c", "1/2,1/2", "--n", "1,0"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("distinct"));
}

#[test]
fn malformed_rational_is_a_usage_error() {
    let out = mm(&["poly", "--r", "1", "--beta", "1.5", "--c", "1/2", "--n", "1"]);
    assert_eq!(code(&out), 2);
    let out = mm(&["eval", "--r", "1", "--beta", "1", "--c", "1/2", "--n", "1", "--x", "x"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn index_length_must_match_r() {
    let out = mm(&["poly", "--r", "2", "--beta", "3/2", "--c", "1/3,1/2", "--n", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn partial_parameter_flags_are_rejected() {
    let out = mm(&["poly", "--r", "1", "--beta", "1", "--n", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn params_file_is_equivalent_to_flags() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.json");
    std::fs::write(&path, r#"{"r":2,"beta":"3/2","c":["1/3","1/2"]}"#).unwrap();
    let out = mm(&["poly", "--params-file", path.to_str().unwrap(), "--n", "1,0"]);
    assert_eq!(code(&out), 0);
    // M at the first unit index is x - c_1 beta / (1 - c_1) = x - 3/4.
    assert_eq!(stdout(&out).trim(), r#"{"poly":["-3/4","1"]}"#);
}

#[test]
fn params_file_validation_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for bad in [
        r#"{"r":2,"beta":"3/2","c":["1/3"]}"#,
        r#"{"r":1,"beta":"-1","c":["1/2"]}"#,
        r#"not json"#,
    ] {
        let path = dir.path().join("bad.json");
        std::fs::write(&path, bad).unwrap();
        let out = mm(&["poly", "--params-file", path.to_str().unwrap(), "--n", "1,0"]);
        assert_eq!(code(&out), 2, "input: {bad}");
    }
    let out = mm(&["poly", "--params-file", "/nonexistent.json", "--n", "1"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn flags_and_file_together_are_rejected_by_the_parser() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("params.json");
    std::fs::write(&path, r#"{"r":1,"beta":"1","c":["1/2"]}"#).unwrap();
    let out = mm(&[
        "poly",
        "--r",
        "1",
        "--beta",
        "1",
        "--c",
        "1/2",
        "--params-file",
        path.to_str().unwrap(),
        "--n",
        "1",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn unknown_subcommand_and_relation_exit_2() {
    assert_eq!(code(&mm(&["frobnicate"])), 2);
    let out = mm(&["check", "nonsense", "--r", "1", "--beta", "1", "--c", "1/2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_on_an_inapplicable_section_exits_2() {
    let out = mm(&["check", "pairwise", "--r", "1", "--beta", "1", "--c", "1/2"]);
    assert_eq!(code(&out), 2);
    let out = mm(&["check", "su11", "--r", "2", "--beta", "3/2", "--c", "1/3,1/2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_pairwise_explicit_set_passes() {
    let out = mm(&[
        "check",
        "pairwise",
        "--r",
        "2",
        "--beta",
        "3/2",
        "--c",
        "1/3,1/2",
        "--max-degree",
        "5",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains(r#""pass":true"#));
    assert!(text.contains(r#""first_failure":null"#));
}

#[test]
fn corrupt_hook_fails_and_names_the_instance() {
    let out = mm(&[
        "check",
        "genfun",
        "--r",
        "1",
        "--beta",
        "1",
        "--c",
        "1/2",
        "--corrupt-recurrence",
    ]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains(r#""pass":false"#));
    // The first violating instance is named in the report.
    assert!(text.contains(r#""first_failure":"FAIL genfun [r=1 beta=1 c=1/2 n=(1)"#));
}

#[test]
fn corrupt_hook_is_hidden_from_help() {
    let out = mm(&["check", "--help"]);
    assert_eq!(code(&out), 0);
    assert!(!stdout(&out).contains("corrupt-recurrence"));
}

#[test]
fn csv_format_emits_quoted_rows() {
    let out = mm(&[
        "check",
        "recurrence-path",
        "--r",
        "1",
        "--beta",
        "1",
        "--c",
        "1/2",
        "--max-degree",
        "3",
        "--format",
        "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.starts_with("relation,instance,pass,lhs,rhs\n"));
    assert!(text.contains("\"first-level-closed-form\",\"r=1 beta=1 c=1/2 i=1\",true"));
}

#[test]
fn out_flag_writes_the_same_payload_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = mm(&[
        "poly", "--r", "1", "--beta", "1", "--c", "1/2", "--n", "3", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let file = std::fs::read_to_string(&path).unwrap();
    assert_eq!(file, stdout(&out));
}

#[test]
fn table_lists_every_index_up_to_the_bound() {
    let out = mm(&[
        "table", "--r", "2", "--beta", "3/2", "--c", "1/3,1/2", "--max-degree", "2",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["polys"].as_array().unwrap().len(), 6);
    assert_eq!(v["polys"][0]["n"], "(0,0)");
    assert_eq!(v["polys"][0]["coeffs"][0], "1");
}

#[test]
fn genfun_matches_the_recurrence_route_through_the_cli() {
    let out = mm(&["genfun", "--r", "1", "--beta", "1", "--c", "1/2", "--order", "2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["order"], 2);
    let c2 = v["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["index"] == "(2)")
        .expect("degree-2 entry");
    assert_eq!(c2["poly"], serde_json::json!(["2", "-5", "1"]));
}

#[test]
fn fock_dump_is_the_frozen_matrix_shape() {
    let out = mm(&[
        "fock", "dump", "a1", "--r", "1", "--beta", "1", "--c", "1/2", "--degree", "2",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["basis"]["ordering"], "graded-lex");
    assert_eq!(v["op"], "a1");
    assert_eq!(v["entries"], serde_json::json!([[0, 1, "1"], [1, 2, "2"]]));
    // Unknown operator names are usage errors.
    let out = mm(&[
        "fock", "dump", "zz9", "--r", "1", "--beta", "1", "--c", "1/2",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn spectrum_reports_one_eigenvalue_per_basis_monomial() {
    let out = mm(&[
        "spectrum", "--r", "1", "--beta", "1", "--c", "1/2", "--op", "h1", "--degree", "4",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(v["eigenvalues"].as_array().unwrap().len(), 5);
    assert!(v["diagnostic"].as_str().unwrap().contains("indicative"));
}

#[test]
fn ordering_flag_applies_to_the_difference_equations_only() {
    let out = mm(&[
        "check", "diffeq-x", "--r", "2", "--beta", "3/2", "--c", "1/3,1/2",
        "--ordering", "descending",
    ]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("order=[2,1]"));
    let out = mm(&[
        "check", "pairwise", "--r", "2", "--beta", "3/2", "--c", "1/3,1/2",
        "--ordering", "descending",
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn check_without_parameters_runs_the_default_battery_sections() {
    let out = mm(&["check", "su11"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains(r#""params":"default-battery""#));
    assert!(text.contains("beta=3"));
}
