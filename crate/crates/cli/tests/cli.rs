//! End-to-end tests of the binary: exit-code contract, JSON schemas, and
//! byte-level determinism.

use std::io::Write;
use std::process::{Command, Output};

fn povmkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_povmkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn quantize_constant_yields_scaled_identity() {
    let inv_sqrt2 = 1.0 / 2f64.sqrt();
    let out = povmkit(&[
        "quantize",
        "--fourier",
        &format!(r#"{{"a0": {inv_sqrt2}, "harmonics": []}}"#),
        "--r",
        "0.8",
        "--phi0",
        "0.3",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["mean"].as_f64().unwrap() - inv_sqrt2).abs() < 1e-15);
    assert!((v["matrix"][0][0].as_f64().unwrap() - inv_sqrt2).abs() < 1e-15);
    assert!((v["matrix"][0][1].as_f64().unwrap()).abs() < 1e-15);
}

#[test]
fn quantize_kills_frequency_one() {
    let out = povmkit(&[
        "quantize",
        "--fourier",
        r#"{"a0": 0.0, "harmonics": [[1, 1.0, 0.0]]}"#,
        "--r",
        "0.9",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    for i in 0..2 {
        for j in 0..2 {
            assert!(v["matrix"][i][j].as_f64().unwrap().abs() < 1e-15);
        }
    }
}

#[test]
fn quantize_exit_codes() {
    // missing file → 2
    let out = povmkit(&["quantize", "--fourier", "/no/such/file.json", "--r", "0.5"]);
    assert_eq!(code(&out), 2);
    // malformed JSON → 2
    let out = povmkit(&["quantize", "--fourier", r#"{"a0": }"#, "--r", "0.5"]);
    assert_eq!(code(&out), 2);
    // domain violation (k = 0 harmonic) → 2 at parse, r out of range → 3
    let out = povmkit(&[
        "quantize",
        "--fourier",
        r#"{"a0": 0.0, "harmonics": []}"#,
        "--r",
        "1.5",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn quantize_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_povmkit"))
        .args(["quantize", "--fourier", "-", "--r", "0.5"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"a0": 1.0, "harmonics": []}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn symbol_directions() {
    // lower symbol of σ₃ at φ₀ = 0 is r·cos2φ
    let out = povmkit(&[
        "symbol",
        "--direction",
        "lower",
        "--matrix",
        r#"{"a": 1.0, "b": 0.0, "d": -1.0}"#,
        "--r",
        "0.44",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["harmonics"][0][0], 2);
    assert!((v["harmonics"][0][1].as_f64().unwrap() - 0.44).abs() < 1e-15);

    // upper symbol at r = 0 is singular → 3
    let out = povmkit(&[
        "symbol",
        "--direction",
        "upper",
        "--matrix",
        r#"{"a": 1.0, "b": 0.0, "d": 0.0}"#,
        "--r",
        "0.0",
    ]);
    assert_eq!(code(&out), 3);

    // upper then quantize round-trips (schemas compose)
    let out = povmkit(&[
        "symbol",
        "--direction",
        "upper",
        "--matrix",
        r#"{"a": 0.3, "b": -0.2, "d": 0.9}"#,
        "--r",
        "0.6",
        "--phi0",
        "0.25",
    ]);
    assert_eq!(code(&out), 0);
    let f = String::from_utf8(out.stdout).unwrap();
    let out = povmkit(&["quantize", "--fourier", &f, "--r", "0.6", "--phi0", "0.25"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["matrix"][0][0].as_f64().unwrap() - 0.3).abs() < 1e-12);
    assert!((v["matrix"][0][1].as_f64().unwrap() + 0.2).abs() < 1e-12);
    assert!((v["matrix"][1][1].as_f64().unwrap() - 0.9).abs() < 1e-12);
}

#[test]
fn toeplitz_identity_holds_through_the_cli() {
    let out = povmkit(&[
        "toeplitz",
        "--fourier",
        r#"{"a0": 0.2, "harmonics": [[2, 1.0, -0.5], [6, 0.3, 0.1]]}"#,
        "--j",
        "2",
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
    // invalid subspace index
    let out = povmkit(&[
        "toeplitz",
        "--fourier",
        r#"{"a0": 1.0, "harmonics": []}"#,
        "--j",
        "3",
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn naimark_arc_and_partition() {
    let two_pi = 2.0 * std::f64::consts::PI;
    let out = povmkit(&["naimark", "--arc", "0", &two_pi.to_string()]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["povm_path"][0][0].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);

    // reversed arc → 3
    let out = povmkit(&["naimark", "--arc", "2.0", "1.0"]);
    assert_eq!(code(&out), 3);

    // quadrant partition sums to the identity
    let q = two_pi / 4.0;
    let partition = format!(
        "[[0, {q}], [{q}, {h}], [{h}, {t}], [{t}, {two_pi}]]",
        h = 2.0 * q,
        t = 3.0 * q
    );
    let out = povmkit(&["naimark", "--partition", &partition]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!(v["residual"].as_f64().unwrap() < 1e-12);
    assert!(v["min_eigenvalue"].as_f64().unwrap() > -1e-12);

    // overlapping partition → 3
    let out = povmkit(&["naimark", "--partition", "[[0, 4.0], [3.9, 6.2831853071795864]]"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn compat_exit_codes_and_round_trip() {
    // identical mixed effects → compatible, exit 0
    let effect = r#"{"alpha": 0.9, "phi": 0.7, "r": 0.4}"#;
    let out = povmkit(&["compat", "--effect1", effect, "--effect2", effect]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "compatible");
    assert!(v["g11"].is_array());

    // the printed effects re-parse as inputs
    let echoed = serde_json::to_string(&v["effect1"]).unwrap();
    let out2 = povmkit(&["compat", "--effect1", &echoed, "--effect2", &echoed]);
    assert_eq!(code(&out2), 0);

    // crossed pure projectors → incompatible, exit 1, scan attached
    let p1 = r#"{"alpha": 1.0, "phi": 0.0, "r": 1.0}"#;
    let p2 = r#"{"alpha": 1.0, "phi": 0.7853981633974483, "r": 1.0}"#;
    let out = povmkit(&["compat", "--effect1", p1, "--effect2", p2]);
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "incompatible");
    assert!(v["alpha_scan"].as_array().unwrap().len() > 4);
    assert!(!v["necessary_holds"].as_bool().unwrap());

    // the sequential pair sits exactly on the feasibility boundary:
    // necessary value √2, admits only the G11 = 0 joint → undetermined (4)
    let s1 = r#"{"alpha": 0.5, "phi": 1.5707963267948966, "r": 0.5}"#;
    let s2 = r#"{"alpha": 0.5, "phi": 0.7853981633974483, "r": 0.5}"#;
    let out = povmkit(&["compat", "--effect1", s1, "--effect2", s2]);
    assert_eq!(code(&out), 4);
    let v = stdout_json(&out);
    assert_eq!(v["verdict"], "undetermined");
    assert!((v["necessary_value"].as_f64().unwrap() - std::f64::consts::SQRT_2).abs() < 1e-9);

    // invalid effect → 3
    let bad = r#"{"alpha": 0.4, "phi": 0.0, "r": 0.5}"#;
    let out = povmkit(&["compat", "--effect1", bad, "--effect2", effect]);
    assert_eq!(code(&out), 3);
}

#[test]
fn sequential_statistics() {
    let pi = std::f64::consts::PI;
    let out = povmkit(&[
        "sequential",
        "--first",
        &(pi / 2.0).to_string(),
        "--second",
        &(pi / 4.0).to_string(),
        "--rho",
        r#"{"a": 0.0, "b": 0.0, "d": 1.0}"#,
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["p1"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert!((v["f_plus"][1][1].as_f64().unwrap() - 0.5).abs() < 1e-12);

    // non-density state → 3
    let out = povmkit(&[
        "sequential",
        "--first",
        "0",
        "--second",
        "1",
        "--rho",
        r#"{"a": 1.0, "b": 0.0, "d": 1.0}"#,
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn polarizer_probabilities() {
    // aligned fully polarized beam transmits with certainty
    let out = povmkit(&[
        "polarizer",
        "--scenario",
        r#"{"pointer": {"s": 0.4, "theta": 0.9}, "beam": {"r": 1.0, "phi": 0.6}, "device": {"r": 0.7, "phi": 0.6}}"#,
    ]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert!((v["p_parallel"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(v["post_state"].as_array().unwrap().len(), 4);

    // unpolarized beam transmits one half
    let out = povmkit(&[
        "polarizer",
        "--scenario",
        r#"{"pointer": {"s": 0.0, "theta": 0.0}, "beam": {"r": 0.0, "phi": 0.0}, "device": {"r": 1.0, "phi": 1.1}}"#,
    ]);
    let v = stdout_json(&out);
    assert!((v["p_parallel"].as_f64().unwrap() - 0.5).abs() < 1e-12);

    // invalid scenario → 3
    let out = povmkit(&[
        "polarizer",
        "--scenario",
        r#"{"pointer": {"s": 1.4, "theta": 0.0}, "beam": {"r": 0.0, "phi": 0.0}, "device": {"r": 1.0, "phi": 0.0}}"#,
    ]);
    assert_eq!(code(&out), 3);
}

#[test]
fn son_check_reports_and_budget() {
    let out = povmkit(&["son-check", "--n", "2", "--tol", "1e-10"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let two_pi = 2.0 * std::f64::consts::PI;
    assert!((v["volume_quadrature"].as_f64().unwrap() - two_pi).abs() < 1e-10);
    assert_eq!(v["matching_product"], 2);
    assert!(v["identity_residual"].as_f64().unwrap() < 1e-12);

    let out = povmkit(&["son-check", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    let vol = 8.0 * std::f64::consts::PI.powi(2);
    assert!((v["volume_quadrature"].as_f64().unwrap() - vol).abs() < 1e-6);
    assert!(v["identity_residual"].as_f64().unwrap() < 1e-8);
    assert!(v["orthonormality_residual"].as_f64().unwrap() < 1e-8);

    // far over the node budget → 5
    let out = povmkit(&["son-check", "--n", "9"]);
    assert_eq!(code(&out), 5);

    // explicit budget override via the environment
    let out = Command::new(env!("CARGO_BIN_EXE_povmkit"))
        .args(["son-check", "--n", "3", "--nodes", "8"])
        .env("POVMKIT_NODE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(5));
    let out = Command::new(env!("CARGO_BIN_EXE_povmkit"))
        .args(["son-check", "--n", "3", "--nodes", "8"])
        .env("POVMKIT_NODE_BUDGET", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_reports_every_criterion() {
    let out = povmkit(&["selftest", "--json"]);
    // criterion 8i pins a verdict the solver honestly refuses, so the suite
    // reports nonzero
    assert_eq!(code(&out), 1);
    let v = stdout_json(&out);
    let items = v.as_array().unwrap();
    assert_eq!(items.len(), 15);
    let failing: Vec<&str> = items
        .iter()
        .filter(|c| !c["passed"].as_bool().unwrap())
        .map(|c| c["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["8i"]);

    // the line format names every criterion
    let out = povmkit(&["selftest"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 14);
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL")).count(), 1);
    assert!(text.contains("14/15 criteria passed"));
}

#[test]
fn identical_inputs_give_identical_bytes() {
    let args = [
        "compat",
        "--effect1",
        r#"{"alpha": 1.0, "phi": 0.3, "r": 0.62}"#,
        "--effect2",
        r#"{"alpha": 1.0, "phi": 1.1, "r": 0.35}"#,
    ];
    let a = povmkit(&args);
    let b = povmkit(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(code(&a), code(&b));
}
