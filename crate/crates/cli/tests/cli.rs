//! End-to-end tests of the `fringelab` binary: exit codes, output shapes, and
//! byte-level determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fringelab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn scan_interp_zero_has_flat_intensity_and_fringing_coincidences() {
    let output = run(&["scan", "--scenario", "interp", "--eta", "0.0", "--phi-points", "9"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "phi,I_A,I_B,P_AA,P_BB,P_AB");
    for line in lines {
        let fields: Vec<f64> = line.split(',').map(|f| f.parse().unwrap()).collect();
        let [phi, i_a, _, p_aa, ..] = fields[..] else {
            panic!("bad row: {line}")
        };
        assert!((i_a - 1.0).abs() < 1e-12);
        assert!((p_aa - 0.25 * (1.0 - (2.0 * phi).cos())).abs() < 1e-12);
    }
}

#[test]
fn fig2_emits_requested_rows_with_unit_classical_column() {
    let output = run(&["fig2", "--points", "101"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "eta,g1_sim,g1_formula,g1_classical");
    assert_eq!(lines.len(), 102);
    for line in &lines[1..] {
        let last = line.rsplit(',').next().unwrap();
        assert_eq!(last.parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["scan", "--scenario", "interp", "--eta", "0.37", "--beta", "1.2"]);
    let b = run(&["scan", "--scenario", "interp", "--eta", "0.37", "--beta", "1.2"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let c = run(&["compare", "--points", "4", "--phi-points", "61"]);
    let d = run(&["compare", "--points", "4", "--phi-points", "61"]);
    assert!(c.status.success());
    assert_eq!(c.stdout, d.stdout);
}

#[test]
fn prep_json_reports_half_probability_and_unit_fidelity() {
    let output = run(&["prep", "--eta", "0.7", "--format", "json"]);
    assert!(output.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert!((value["success_probability"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((value["fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn young_accepts_complex_coefficient_list() {
    let output = run(&[
        "young",
        "--coeffs",
        "0,0.70710678118654746:0,0.5,0:0.5",
        "--phi-points",
        "21",
    ]);
    assert!(output.status.success());
    assert_eq!(stdout(&output).lines().count(), 22);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["scan"]).status.code(), Some(1)); // missing --scenario
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["fig2", "--format", "yaml"]).status.code(), Some(1));
}

#[test]
fn validation_errors_exit_2() {
    assert_eq!(
        run(&["scan", "--scenario", "interp", "--eta", "1.5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["scan", "--scenario", "bogus"]).status.code(), Some(2));
    // Unnormalized coefficient list.
    assert_eq!(run(&["young", "--coeffs", "1,1"]).status.code(), Some(2));
}

#[test]
fn verify_passes_and_exits_0() {
    let output = run(&["verify", "--cutoff", "20"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("all checks passed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn list_names_every_scenario() {
    let output = run(&["list"]);
    assert!(output.status.success());
    let text = stdout(&output);
    for name in ["interp", "noon", "classical", "fig2", "prep", "young", "compare", "verify"] {
        assert!(text.contains(name), "missing {name}");
    }
    assert!(text.contains("[0, 1]"));
    assert!(text.contains("[0, pi/2]"));
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join("fringelab-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fig2.csv");
    let piped = run(&["fig2", "--points", "11"]);
    let written = run(&["fig2", "--points", "11", "--out", path.to_str().unwrap()]);
    assert!(written.status.success());
    assert!(written.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), piped.stdout);
}
