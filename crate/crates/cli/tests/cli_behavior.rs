//! End-to-end CLI behaviour: the documented invocations, exit codes and
//! error shapes.

use pcontact_cli::run;
use serde_json::Value;
use std::path::PathBuf;

fn tmp(name: &str, content: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, content).unwrap();
    path
}

fn argv(parts: &[&str]) -> Vec<String> {
    parts.iter().map(|s| s.to_string()).collect()
}

fn run_json(parts: &[&str]) -> (i32, Value) {
    let (code, out) = run(&argv(parts));
    let v: Value = serde_json::from_str(&out).unwrap_or_else(|e| panic!("bad JSON ({e}): {out}"));
    (code, v)
}

fn emit(id: &str, params: &[&str]) -> String {
    let mut a = vec!["catalog", "--emit", id];
    a.extend_from_slice(params);
    let (code, out) = run(&argv(&a));
    assert_eq!(code, 0, "{out}");
    out
}

#[test]
fn check_reports_validation_flags() {
    let file = tmp("iwasawa.json", &emit("iwasawa", &[]));
    let (code, v) = run_json(&["check", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["jacobi_ok"], Value::Bool(true));
    assert_eq!(v["results"]["integrable"], Value::Bool(true));
    assert_eq!(v["results"]["nilpotent"], Value::Bool(true));
    assert_eq!(v["results"]["complex_parallelisable"], Value::Bool(true));
    assert_eq!(v["scope"], "invariant-level");
}

#[test]
fn contact_exists_on_family_b_file() {
    // the Iwasawa point of the nilpotent-J family, via a structure file
    let content = emit("uga07_b", &["eps=0", "rho=1", "A=0", "B=0", "C=0", "D=0"]);
    let file = tmp("uga07b_e0r1.json", &content);
    let (code, v) = run_json(&["contact", "--exists", "-p", "1", file.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["exists"], Value::Bool(true));
    assert_eq!(v["results"]["witness"], Value::String("phi3".into()));
}

#[test]
fn negative_answers_still_exit_zero() {
    let file = tmp("torus3.json", &emit("torus", &["n=3"]));
    let (code, v) = run_json(&["contact", "--exists", "-p", "1", file.to_str().unwrap()]);
    assert_eq!(code, 0, "a negative mathematical answer is a successful computation");
    assert_eq!(v["results"]["exists"], Value::Bool(false));
    assert!(v["certificates"]["polarization"].is_array());
}

#[test]
fn order2_via_files_matches_the_documented_run() {
    let file = tmp("iwasawa2.json", &emit("iwasawa", &[]));
    let (code, v) = run_json(&[
        "deform", "--gamma", "phi3", "--order2", "--class", "0", file.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["obstructed"], Value::Bool(false));
    assert_eq!(v["results"]["all_residuals_zero"], Value::Bool(true));
    for (name, value) in v["residuals"].as_object().unwrap() {
        assert_eq!(value, &Value::String("0".into()), "residual {name}");
    }
    // and through a theta file
    let theta = tmp("theta.txt", "phi1b^xi1 + phi2b^xi2\n");
    let (code, v) = run_json(&[
        "deform", "--gamma", "phi3", "--order2", "--theta", theta.to_str().unwrap(),
        file.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["results"]["all_residuals_zero"], Value::Bool(true));
    assert_eq!(v["certificates"]["bracket_psi1_psi1"], "2*phi1b^phi2b^xi3");
}

#[test]
fn malformed_files_exit_one_naming_the_term() {
    let file = tmp(
        "malformed.json",
        r#"{"name":"x","n":3,"basis":["a","b","c"],
            "d":{"3":[{"coeff":{"re":"1","im":"0"},"factors":["7","1"]}]}}"#,
    );
    let (code, out) = run(&argv(&["check", file.to_str().unwrap()]));
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["error"]["kind"], "input");
    assert!(v["error"]["message"].as_str().unwrap().contains("d.3[0]"), "{out}");

    // unknown flags and missing inputs are input errors too
    let (code, _) = run(&argv(&["contact", "--nope"]));
    assert_eq!(code, 1);
    let (code, _) = run(&argv(&["cohomology", "--dolbeault"]));
    assert_eq!(code, 1);
    let (code, _) = run(&argv(&["catalog", "--emit", "not_an_entry"]));
    assert_eq!(code, 1);
    let (code, out) = run(&argv(&["catalog", "--emit", "g3", "x=0"]));
    assert_eq!(code, 1);
    assert!(out.contains("violates"), "{out}");
}

#[test]
fn sheaves_and_cohomology_subcommands() {
    let (code, v) = run_json(&["sheaves", "--gamma", "phi2", "--catalog", "nakamura"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["foliation"]["closed_under_bracket"], Value::Bool(true));
    assert_eq!(v["results"]["F"]["basis"].as_array().unwrap().len(), 2);

    let (code, v) = run_json(&["cohomology", "--dolbeault", "--tangent", "--catalog", "iwasawa"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["h"][1][0], 3);
    assert_eq!(v["results"]["h"][0][1], 2);
    assert_eq!(v["results"]["h_tangent"][1], 6);
    assert_eq!(v["results"]["b"], serde_json::json!([1, 4, 8, 10, 8, 4, 1]));

    let (code, v) = run_json(&["cohomology", "--z2", "0", "1", "--catalog", "h15"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["Z2"]["basis"].as_array().unwrap().len(), 2);

    let (code, v) = run_json(&["cohomology", "--frolicher", "6", "--catalog", "iwasawa"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["stabilization"], 2);
    assert!(v["results"]["E1"].is_array());
    assert!(v["results"]["E2"].is_array());

    let (code, v) = run_json(&["cohomology", "--page1", "--catalog", "h15"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["all_hold"], Value::Bool(false));
    assert_eq!(v["results"]["failure"]["certificate"], "phi1^phi1b");
}

#[test]
fn verify_subcommand_reports_counts() {
    let (code, v) = run_json(&[
        "verify", "--suite", "lie-calculus", "--seed", "5", "--trials", "4", "--nmax", "2",
        "--degmax", "1", "--bridge",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], Value::Bool(true));
    assert_eq!(v["results"]["checks"].as_array().unwrap().len(), 13);
    assert_eq!(v["results"]["bridge"].as_array().unwrap().len(), 2);
    // the documented mutation run fails and carries a counterexample
    let (code, v) = run_json(&[
        "verify", "--seed", "5", "--trials", "4", "--nmax", "2", "--degmax", "1", "--mutated",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["passed"], Value::Bool(false));
    assert_eq!(v["results"]["first_counterexample"]["identity"], "lie_formula_vs_definition");
}

#[test]
fn sweep_mode_orders_by_parameter_tuple() {
    let (code, v) = run_json(&[
        "contact", "--exists", "-p", "1", "--catalog", "g8_JA", "--sweep",
    ]);
    assert_eq!(code, 0);
    let points = v["results"]["points"].as_array().unwrap();
    assert_eq!(points.len(), 4);
    assert_eq!(points[0]["params"]["A"], "-1*i");
    assert_eq!(points[0]["exists"], Value::Bool(true));
    for p in &points[1..] {
        assert_eq!(p["exists"], Value::Bool(false));
    }
}

#[test]
fn text_output_mode() {
    let (code, out) = run(&argv(&[
        "contact", "--form", "phi3", "--catalog", "iwasawa", "--output", "text",
    ]));
    assert_eq!(code, 0);
    assert!(out.contains("results.holds: true"), "{out}");
    assert!(out.contains("results.top_coefficient: -1"), "{out}");
}

#[test]
fn catalog_list_is_complete() {
    let (code, v) = run_json(&["catalog", "--list"]);
    assert_eq!(code, 0);
    let entries = v["results"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), pcontact_core::catalog::entries().len());
    assert!(entries.iter().any(|e| e["id"] == "iwasawa"));
    assert!(entries.iter().any(|e| e["id"] == "ex53"));
}

#[test]
fn no_contact_subcommand() {
    let (code, v) = run_json(&["contact", "--no-contact", "phi2", "--catalog", "nakamura"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["holds"], Value::Bool(true));
    assert_eq!(v["results"]["zeta"], "-phi1");
    let (code, v) = run_json(&["contact", "--no-contact", "phi3", "--catalog", "iwasawa"]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["holds"], Value::Bool(false));
}

#[test]
fn gamma_witness_keyword() {
    let (code, v) = run_json(&[
        "deform", "--gamma", "witness", "--space", "--catalog", "iwasawa",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["results"]["dimension"], 4);
    assert_eq!(v["results"]["tangent_h01"], 6);
}

#[test]
fn out_of_range_inputs_are_input_errors_not_panics() {
    // oversized coframes are rejected at the schema, not by an assert
    let (code, out) = run(&argv(&["catalog", "--emit", "torus", "n=99"]));
    assert_eq!(code, 1);
    assert!(out.contains("at most 60"), "{out}");
    let (code, _) = run(&argv(&["catalog", "--emit", "ex53", "l=20"]));
    assert_eq!(code, 1);
    // a theta file of the wrong degree is an input error
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let theta = dir.join("theta_wrong_degree.txt");
    std::fs::write(&theta, "phi1b^phi2b^xi1\n").unwrap();
    let (code, out) = run(&argv(&[
        "deform", "--gamma", "phi3", "--order2", "--theta", theta.to_str().unwrap(),
        "--catalog", "iwasawa",
    ]));
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("(0,1)-form"), "{out}");
}
