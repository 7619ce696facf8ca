use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cbundle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}\nstderr:\n{}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn run_json(args: &[&str], code: i32) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json_of(&out)
}

#[test]
fn classify_genus_two_unit_euler() {
    let v = run_json(&["classify", "--chi-s", "-2", "--euler", "1"], 0);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["deterministic"], true);
    let o = &v["outputs"];
    assert_eq!(o["enrollment_spectrum"], serde_json::json!([1, 2]));
    assert_eq!(o["conjugacy_classes"], 2);
    assert_eq!(o["vot_bound"], 1);
    assert_eq!(o["transverse_exists"], true);
}

#[test]
fn classify_sphere_route() {
    let v = run_json(&["classify", "--chi-s", "2", "--euler", "-1"], 0);
    assert_eq!(v["outputs"]["sphere_enrollment"], "-2");
    assert_eq!(v["outputs"]["enrollment_spectrum"], Value::Null);
}

#[test]
fn classify_beyond_milnor_wood() {
    let v = run_json(&["classify", "--chi-s", "-2", "--euler", "5"], 0);
    assert_eq!(v["outputs"]["transverse_exists"], false);
}

#[test]
fn classify_rejects_odd_euler_characteristic() {
    let v = run_json(&["classify", "--chi-s", "-3", "--euler", "0"], 2);
    assert!(v["error"]["message"].as_str().unwrap().contains("-3"));
    assert!(v.get("outputs").is_none());
}

#[test]
fn holonomy_matches_area() {
    let v = run_json(&["holonomy", "--genus", "2", "--area", "4*pi", "--iters", "20000"], 0);
    let rho = v["outputs"]["translation_number"].as_f64().unwrap();
    assert!((rho.abs() - 2.0).abs() <= 1.0 / 20000.0 + 1e-5, "{rho}");
    let v = run_json(&["holonomy", "--genus", "2", "--area", "1e-6", "--iters", "20000"], 0);
    let rho = v["outputs"]["translation_number"].as_f64().unwrap();
    assert!(rho.abs() <= 1.0 / 20000.0 + 1e-5, "{rho}");
}

#[test]
fn holonomy_area_out_of_range_is_a_usage_error() {
    let v = run_json(&["holonomy", "--genus", "2", "--area", "6*pi"], 2);
    assert_eq!(v["error"]["kind"], "holonomy");
}

#[test]
fn polygon_report() {
    let v = run_json(&["polygon", "--genus", "2", "--area", "4*pi"], 0);
    let o = &v["outputs"];
    assert_eq!(o["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(o["pairings"].as_array().unwrap().len(), 4);
    assert!((o["commutator_trace"].as_f64().unwrap().abs() - 2.0).abs() < 1e-6);
}

#[test]
fn covers_orbit_count() {
    let v = run_json(&["covers", "--genus", "2", "--n", "6"], 0);
    assert_eq!(v["outputs"]["orbit_count"], 4);
    assert_eq!(v["outputs"]["agree"], true);
}

#[test]
fn forms_library_sweep() {
    let v = run_json(&["forms", "--grid", "16"], 0);
    let forms = v["outputs"]["forms"].as_array().unwrap();
    assert!(forms.len() >= 9);
    for f in forms {
        assert_eq!(f["ok"], true, "{f}");
        assert_ne!(f["sign"], "mixed");
    }
}

#[test]
fn forms_file_and_failures() {
    let v = run_json(&["forms", "--form-file", &data("models.forms"), "--grid", "8"], 0);
    let signs: Vec<_> = v["outputs"]["forms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["sign"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(signs, ["positive", "positive", "negative"]);

    let v = run_json(&["forms", "--form-file", &data("wrong_sign.forms"), "--grid", "8"], 1);
    assert_eq!(v["outputs"]["all_ok"], false);

    let v = run_json(&["forms", "--form-file", &data("syntax_error.forms")], 2);
    assert_eq!(v["error"]["kind"], "parse");
    assert!(v["error"]["message"].as_str().unwrap().contains(":2:11:"));

    let v = run_json(&["forms", "--form-file", &data("unknown_variable.forms")], 2);
    let message = v["error"]["message"].as_str().unwrap();
    assert!(message.ends_with(":2:15: unknown variable 'w'"), "{message}");
}

#[test]
fn multicurve_comparisons() {
    let v = run_json(
        &["multicurve", "--file", &data("torus2.txt"), "--compare", &data("torus2.txt")],
        0,
    );
    assert_eq!(v["outputs"]["equal"], true);
    let v = run_json(
        &["multicurve", "--file", &data("torus2.txt"), "--compare", &data("torus2_relabeled.txt")],
        0,
    );
    assert_eq!(v["outputs"]["equal"], true);
    let v = run_json(
        &["multicurve", "--file", &data("torus2.txt"), "--compare", &data("torus4.txt")],
        0,
    );
    assert_eq!(v["outputs"]["equal"], false);
}

#[test]
fn multicurve_tightness_and_validation() {
    let v = run_json(&["multicurve", "--file", &data("sphere_one_curve.txt"), "--euler", "0"], 0);
    assert_eq!(v["outputs"]["decomposition"]["universal_tightness"], "UniversallyTight");
    assert_eq!(v["outputs"]["decomposition"]["convex_neighborhood_tight"], true);

    let v = run_json(&["multicurve", "--file", &data("euler_mismatch.txt")], 1);
    let d = &v["outputs"]["decomposition"];
    assert_eq!(d["valid"], false);
    assert!(d["diagnostics"][0].as_str().unwrap().contains("euler mismatch"));

    let v = run_json(&["multicurve", "--file", &data("missing.txt")], 2);
    assert_eq!(v["error"]["kind"], "io");
}

#[test]
fn bad_flags_exit_with_usage_code() {
    assert_eq!(run(&["classify", "--chi-s", "x", "--euler", "0"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["holonomy", "--genus", "2", "--area", "2*pi", "--iters", "5000"][..],
        &["forms", "--grid", "8"][..],
        &["classify", "--chi-s", "-4", "--euler", "-3"][..],
    ] {
        let (a, b) = (run(args), run(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
