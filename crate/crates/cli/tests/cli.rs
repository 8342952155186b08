use serde_json::Value;
use std::f64::consts::PI;
use vortexw_cli::run;

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut argv = vec!["vortexw"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, text) = call(args);
    (code, serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}")))
}

#[test]
fn energy_of_the_centred_vortex() {
    let (code, v) = json(&["energy", "--map", "identity", "--vortex", "0,0,1"]);
    assert_eq!(code, 0);
    assert_eq!(v["hat_w"].as_f64(), Some(0.0));
    assert_eq!(v["w"].as_f64(), Some(0.0));
}

#[test]
fn energy_on_a_scaled_disc() {
    let (code, v) = json(&["energy", "--map", "scale:2", "--vortex", "0.5,0,1"]);
    assert_eq!(code, 0);
    let expect = PI * 0.75f64.ln() + PI * 2f64.ln();
    assert!((v["hat_w"].as_f64().unwrap() - expect).abs() < 1e-12);
}

#[test]
fn nd_on_the_disc() {
    let (code, v) = json(&["nd", "--map", "identity"]);
    assert_eq!(code, 0);
    assert_eq!(v["nd1"], Value::Bool(true));
    assert_eq!(v["nd2"], Value::Bool(true));
    assert!((v["sigma_min"].as_f64().unwrap() - 1.0).abs() < 1e-6);
}

#[test]
fn expansion_matches_closed_form() {
    let (code, v) = json(&[
        "expand", "--map", "identity", "--vortex", "0.5,0,1", "--psi", "zero", "--rho", "0.02,0.01,0.005",
    ]);
    assert_eq!(code, 0);
    let target = -PI * 0.75f64.ln();
    assert!((v["w_estimate"].as_f64().unwrap() - target).abs() <= 5e-3);
    assert!((v["w_formula"].as_f64().unwrap() - target).abs() <= 1e-12);
    assert!(v["abs_err"].as_f64().unwrap() <= 5e-3);
}

#[test]
fn expansion_needs_the_disc() {
    let (code, v) = json(&["expand", "--map", "scale:2", "--vortex", "0.5,0,1"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"], "InvalidInput");
}

#[test]
fn critical_point_of_an_opposite_pair() {
    let (code, v) = json(&["crit", "--vortex", "0.5,0,1", "--vortex", "-0.5,0,-1"]);
    assert_eq!(code, 0);
    let t = v["vortices"][0]["re"].as_f64().unwrap();
    assert!((t * t - (5f64.sqrt() - 2.0)).abs() < 1e-12);
    // rotations of the disc leave Ŵ unchanged, so the point is degenerate
    assert_eq!(v["nondegenerate"], Value::Bool(false));
}

#[test]
fn maximum_search() {
    let (code, v) = json(&["crit", "--map", "coeffs:0,0;1,0;0.05,0", "--max"]);
    assert_eq!(code, 0);
    assert_eq!(v["nondegenerate"], Value::Bool(true));
    assert_eq!(v["global_candidate"], Value::Bool(true));
    assert!(v["vortices"][0]["re"].as_f64().unwrap().abs() < 0.25);
}

#[test]
fn bad_inputs_exit_with_two() {
    for args in [
        vec!["energy", "--vortex", "1.2,0,1"],
        vec!["energy", "--vortex", "0,0"],
        vec!["energy", "--map", "coeffs:0,0;1,0;0.6,0", "--vortex", "0,0,1"],
        vec!["energy", "--vortex", "0.1,0,1", "--vortex", "-0.1,0,-1"],
        vec!["energy"],
        vec!["nope"],
        vec!["crit", "--vortex", "0,0,1", "--target", "other"],
    ] {
        let (code, text) = call(&args);
        assert_eq!(code, 2, "{args:?}: {text}");
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(v["error"].is_string() && v["message"].is_string());
    }
}

#[test]
fn computation_failures_exit_with_one() {
    // Newton started on a near-collision of like vortices runs off
    let (code, text) = call(&["crit", "--vortex", "0.3,0,1", "--vortex", "0.32,0,1"]);
    assert_eq!(code, 1, "{text}");
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(["NewtonDiverged", "LeftAdmissibleRegion"].contains(&v["error"].as_str().unwrap()));
}

#[test]
fn landscape_marks_the_outside_with_nan() {
    let (code, text) = call(&["landscape", "--grid", "5", "--csv"]);
    assert_eq!(code, 0);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,y,hat_w"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 25);
    for r in &rows {
        let inside = r[0].hypot(r[1]) < 0.99;
        assert_eq!(inside, r[2].is_finite(), "{r:?}");
    }
    let centre = rows.iter().find(|r| r[0] == 0.0 && r[1] == 0.0).unwrap();
    assert_eq!(centre[2], 0.0);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cfg.json");
    std::fs::write(
        &path,
        r#"{"map": {"coeffs": [[0,0],[2,0]]}, "vortices": [{"re": 0.5, "im": 0, "degree": 1}],
            "psi": {"cos": [0.1], "sin": []}, "trunc": 16, "quad": {"radial": 32, "angular": 64}}"#,
    )
    .unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["energy", "--config", p]);
    assert_eq!(code, 0);
    assert!((v["hat_w"].as_f64().unwrap() - (PI * 0.75f64.ln() + PI * 2f64.ln())).abs() < 1e-12);
    let (_, v) = json(&["energy", "--config", p, "--map", "identity"]);
    assert!((v["hat_w"].as_f64().unwrap() - PI * 0.75f64.ln()).abs() < 1e-12);

    std::fs::write(&path, r#"{"vortexes": []}"#).unwrap();
    assert_eq!(call(&["energy", "--config", p]).0, 2);
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let args = ["nd", "--map", "coeffs:0,0;1,0;0.05,0", "--out", path.to_str().unwrap()];
    let (code, text) = call(&args);
    assert_eq!((code, text.as_str()), (0, ""));
    let first = std::fs::read(&path).unwrap();
    call(&args);
    assert_eq!(first, std::fs::read(&path).unwrap());
}

#[test]
fn csv_output() {
    let (code, text) = call(&["energy", "--vortex", "0,0,1", "--csv"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("key,value\n"));
    assert!(text.lines().any(|l| l == "hat_w,0.0"));
}

#[test]
fn selfcheck_passes() {
    let (code, v) = json(&["selfcheck"]);
    assert_eq!(code, 0);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(v["fixtures"].as_array().unwrap().len() >= 8);
    let (code, text) = call(&["selfcheck", "--csv"]);
    assert_eq!(code, 0);
    assert!(text.starts_with("name,pass,deviation,tolerance\n"));
}

#[test]
fn help_exits_cleanly() {
    let (code, text) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(text.contains("landscape"));
}
