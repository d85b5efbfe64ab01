//! End-to-end checks of the command surface: documented outputs, argument
//! validation, and the exit-code convention (0 ok, 2 usage, 3 internal).

use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecy3"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn coefficients(args: &[&str]) -> Vec<String> {
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let output = run(&json_args);
    assert!(output.status.success(), "command failed: {json_args:?}");
    let parsed: Value = serde_json::from_slice(&output.stdout).unwrap();
    parsed["result"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect()
}

#[test]
fn series_phi_prefix() {
    let coeffs = coefficients(&["series", "phi", "--prec", "4"]);
    assert_eq!(&coeffs[..3], ["3", "-1188", "184032"]);
}

#[test]
fn series_h_low_orders() {
    assert_eq!(
        coefficients(&["series", "h", "--prec", "2"]),
        ["-3", "0", "0"]
    );
}

#[test]
fn series_eta_prefix() {
    assert_eq!(
        coefficients(&["series", "eta", "--prec", "5"]),
        ["1", "-1", "-1", "0", "0", "1"]
    );
}

#[test]
fn series_eta_inv36_prefix() {
    let coeffs = coefficients(&["series", "eta-inv36", "--prec", "2"]);
    assert_eq!(&coeffs[..2], ["1", "36"]);
}

#[test]
fn series_gw_zero_mode_vanishes_below_three() {
    let coeffs = coefficients(&["series", "gw", "--prec", "4"]);
    assert_eq!(&coeffs[..3], ["0", "0", "0"]);
    assert_ne!(coeffs[3], "0");
}

#[test]
fn pluecker_discriminant_row() {
    let output = run(&["pluecker", "36", "0", "216", "--format", "json"]);
    assert!(output.status.success());
    let parsed: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(parsed["result"]["degree"], "612");
    assert_eq!(parsed["result"]["nodes"], "184032");
    assert_eq!(parsed["result"]["cusps"], "1944");
}

#[test]
fn pluecker_conic_and_nodal_cubic() {
    let conic: Value =
        serde_json::from_slice(&run(&["pluecker", "2", "0", "0", "--format", "json"]).stdout)
            .unwrap();
    assert_eq!(conic["result"]["degree"], "2");
    assert_eq!(conic["result"]["nodes"], "0");
    let cubic: Value =
        serde_json::from_slice(&run(&["pluecker", "3", "1", "0", "--format", "json"]).stdout)
            .unwrap();
    assert_eq!(cubic["result"]["degree"], "4");
}

#[test]
fn lattice_theta_a2() {
    assert_eq!(
        coefficients(&["lattice", "theta", "a2", "--prec", "3"]),
        ["1", "6", "0", "6"]
    );
}

#[test]
fn lattice_enum_lists_vectors() {
    let output = run(&[
        "lattice", "enum", "a1a1", "--norm", "-4", "--format", "json",
    ]);
    assert!(output.status.success());
    let parsed: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(parsed["result"]["count"], "4");
    let vectors = parsed["result"]["vectors"].as_array().unwrap();
    assert_eq!(vectors[0].as_array().unwrap()[0], "-1");
}

#[test]
fn lattice_mw_power_zero_is_the_zero_section() {
    let output = run(&[
        "lattice", "mw-power", "--k", "0", "--sz", "5", "--format", "json",
    ]);
    assert!(output.status.success());
    let parsed: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(parsed["result"]["sigma_coef"], "0");
    assert_eq!(parsed["result"]["z_coef"], "1");
    assert_eq!(parsed["result"]["f_coef"], "0");
    assert_eq!(parsed["result"]["self_intersection"], "-3");
}

#[test]
fn lattice_project_agrees_with_both_routes() {
    let output = run(&["lattice", "project", "--sz", "3", "--format", "json"]);
    let parsed: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(parsed["result"]["projection_norm"], "-12");
    assert_eq!(parsed["result"]["gram_projection_norm"], "-12");
}

#[test]
fn lattice_classify_bitangent_row() {
    let output = run(&["lattice", "classify", "bitangent", "--format", "json"]);
    let parsed: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(parsed["result"]["kodaira"], "I2+I2");
    let sings = parsed["result"]["singularities"].as_array().unwrap();
    assert_eq!(sings.len(), 2);
    assert_eq!(sings[0], "A1");
}

#[test]
fn conjecture_mode_is_labeled_experimental() {
    let output = run(&[
        "series",
        "gw",
        "--prec",
        "3",
        "--c-mode",
        "conjecture",
        "--conj-theta",
        "a2",
        "--conj-eta",
        "eta",
        "--format",
        "json",
    ]);
    assert!(output.status.success());
    let parsed: Value = serde_json::from_slice(&output.stdout).unwrap();
    let provenance = parsed["provenance"].as_array().unwrap();
    assert!(provenance
        .iter()
        .any(|p| p.as_str().unwrap().contains("EXPERIMENTAL")));
    assert_eq!(parsed["parameters"]["conj_theta"], "a2");
}

#[test]
fn usage_errors_exit_two() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["pluecker", "1", "0", "0"],
        vec!["pluecker", "2", "1", "0"],
        vec!["series", "e4", "--c-mode", "zero"],
        vec!["series", "gw", "--c-mode", "conjecture"],
        vec![
            "series",
            "gw",
            "--c-mode",
            "conjecture",
            "--conj-theta",
            "a1",
        ],
        vec!["lattice", "enum", "a1", "--norm", "2"],
        vec!["lattice", "enum", "a1", "--norm", "-2000000000"],
        vec!["series", "nonsense"],
        vec!["nonsense"],
    ];
    for args in cases {
        let output = run(&args);
        assert_eq!(output.status.code(), Some(2), "args {args:?}");
        assert!(
            !output.stderr.is_empty(),
            "args {args:?} should explain itself"
        );
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert!(run(&["--help"]).status.success());
    assert!(run(&["series", "--help"]).status.success());
    assert!(run(&["--version"]).status.success());
}
