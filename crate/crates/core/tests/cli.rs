//! End-to-end checks of the command-line binary: exit codes, determinism,
//! and golden exports.

use std::process::{Command, Output};

fn xomega(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xomega"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn bh05_prints_value_and_verdict() {
    let out = xomega(&["bh05", "--n", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "25 PASS\n");
}

#[test]
fn build_xn_matches_golden_edge_list() {
    let out = xomega(&["build-xn", "--n", "3", "--format", "csv"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("../golden/fig4_model3.csv"));
}

#[test]
fn window_export_matches_golden() {
    let out = xomega(&[
        "build-window",
        "--omega",
        "(10)",
        "--lo",
        "-8",
        "--hi",
        "8",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), include_str!("../golden/fig3_x_period10.csv"));
}

#[test]
fn dot_output_has_header() {
    let out = xomega(&["build-gamma", "--n", "2", "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("graph gamma2 {"));
    assert!(text.contains("gen=a"));
}

#[test]
fn growth_is_deterministic() {
    let a = xomega(&["growth", "--omega", "(110)", "--radius", "24"]);
    let b = xomega(&["growth", "--omega", "(110)", "--radius", "24"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("r,count\n0,1\n1,5\n"));
}

#[test]
fn orbital_growth_agrees_with_default() {
    let a = xomega(&["growth", "--omega", "(10)", "--radius", "16"]);
    let b = xomega(&["growth", "--omega", "(10)", "--radius", "16", "--orbital"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn window_shorthand_accepted() {
    let out = xomega(&["census", "--omega", "(10)", "--r", "0", "--window", "2^6"]);
    assert!(out.status.success());
    assert!(stdout(&out).starts_with("type,multiplicity,representative\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(xomega(&["bh05"]).status.code(), Some(2));
    assert_eq!(
        xomega(&["build-window", "--omega", "notaword", "--lo", "0", "--hi", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(xomega(&["build-xn", "--n", "40"]).status.code(), Some(2));
}

#[test]
fn verification_failures_exit_1() {
    let out = xomega(&[
        "localiso", "--omega", "(0)", "--other", "(10)", "--r", "0", "--m", "6",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out), "distinguished\n");
    let holo = xomega(&["holonomy", "--omega", "(0)", "--r", "1"]);
    assert_eq!(holo.status.code(), Some(1));
}

#[test]
fn localiso_positive_case() {
    let out = xomega(&[
        "localiso", "--omega", "(10)", "--other", "(110)", "--r", "2", "--m", "9",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "locally-isomorphic\n");
}

#[test]
fn contraction_command_passes() {
    let out = xomega(&[
        "contraction",
        "--samples",
        "10",
        "--max-len",
        "32",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "samples=10 nucleus=PASS halving=PASS\n");
}
