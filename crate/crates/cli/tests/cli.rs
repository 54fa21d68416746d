use std::process::{Command, Output};

use serde_json::Value;

fn hzeta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hzeta"))
        .args(args)
        .env_remove("HZETA_PRECISION_BITS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = hzeta(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn zeta_table_json() {
    let v = json(&["zeta", "--a", "5", "--b", "3", "--pmax", "4"]);
    assert_eq!(v["values"]["2"], "-5/192");
    assert_eq!(v["values"]["3"], "1/1536");
    assert_eq!(v["a"], "5");
}

#[test]
fn zeta_methods_print_the_same_values() {
    let base = json(&["zeta", "--a", "1/2", "--b", "7/3", "--pmax", "12"]);
    for m in ["quadratic", "series"] {
        let other = json(&[
            "zeta", "--a", "1/2", "--b", "7/3", "--pmax", "12", "--method", m,
        ]);
        assert_eq!(base["values"], other["values"], "{m}");
    }
}

#[test]
fn zeta_csv() {
    let out = hzeta(&[
        "zeta", "--a", "1", "--b", "2", "--pmax", "3", "--format", "csv",
    ]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "p,value\n2,-1/18\n3,-1/270\n"
    );
}

#[test]
fn bernoulli_numbers() {
    let v = json(&["bernoulli", "--a", "1", "--b", "3", "--nmax", "7"]);
    let got: Vec<&str> = v["bernoulli"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(
        got,
        [
            "1",
            "-1/4",
            "1/40",
            "1/160",
            "1/5600",
            "-1/896",
            "-13/19200",
            "7/76800"
        ]
    );
}

#[test]
fn polynomials() {
    let v = json(&["poly", "--a", "1", "--b", "1", "--n", "2"]);
    assert_eq!(v["text"], "x^2 - x + 1/6");
    let v = json(&["poly", "--a", "1", "--b", "1", "--n", "2", "--family", "C"]);
    assert_eq!(v["text"], "x^2 + x + 1/3");
}

#[test]
fn zeros_of_exponential_case() {
    let v = json(&[
        "zeros",
        "--a",
        "1",
        "--b",
        "1",
        "--pairs",
        "3",
        "--precision-bits",
        "96",
    ]);
    let zeros = v["zeros"].as_array().unwrap();
    assert_eq!(zeros.len(), 3);
    for (k, z) in zeros.iter().enumerate() {
        let im: f64 = z["im"].as_str().unwrap().parse().unwrap();
        let re: f64 = z["re"].as_str().unwrap().parse().unwrap();
        assert!((im - 2.0 * std::f64::consts::PI * (k + 1) as f64).abs() < 1e-12);
        assert!(re.abs() < 1e-12);
    }
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_hzeta"))
        .args(["zeros", "--a", "1", "--b", "2", "--pairs", "1"])
        .env("HZETA_PRECISION_BITS", "80")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision_bits"], 80);
}

#[test]
fn truncated_zeta() {
    let v = json(&[
        "zeta-num",
        "--a",
        "1",
        "--b",
        "1",
        "--pairs",
        "20",
        "--precision-bits",
        "64",
    ]);
    assert_eq!(v["exact"], "-1/12");
    let diff: f64 = v["difference"].as_str().unwrap().parse().unwrap();
    let bound: f64 = v["remainder_bound"].as_str().unwrap().parse().unwrap();
    assert!(diff.abs() <= 1.1 * bound);
}

#[test]
fn verify_passes() {
    let out = hzeta(&["verify", "--a", "2", "--b", "3", "--pmax", "8"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 5);
}

#[test]
fn small_conjecture_scan_is_clean() {
    let v = json(&["conjecture", "--bmax", "8", "--nmax", "30"]);
    assert_eq!(v["alpha"].as_array().unwrap().len(), 8);
    assert!(v["violations"].as_array().unwrap().is_empty());
}

#[test]
fn bad_input_exits_2() {
    for args in [
        &["zeta", "--a", "0", "--b", "1"][..],
        &["zeta", "--a", "x/y", "--b", "1"],
        &["zeta", "--a", "1", "--b", "1", "--pmax", "1"],
        &["zeros", "--a", "1", "--b", "1", "--precision-bits", "20"],
        &["zeros", "--a", "1", "--b", "1", "--tol", "-1"],
    ] {
        assert_eq!(hzeta(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unreachable_tolerance_exits_1() {
    let out = hzeta(&[
        "zeros",
        "--a",
        "1",
        "--b",
        "1",
        "--pairs",
        "1",
        "--precision-bits",
        "64",
        "--tol",
        "1e-40",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["zeta", "--a", "3/2", "--b", "5", "--pmax", "15"][..],
        &[
            "zeros",
            "--a",
            "2",
            "--b",
            "7",
            "--pairs",
            "4",
            "--precision-bits",
            "128",
        ],
    ] {
        assert_eq!(hzeta(args).stdout, hzeta(args).stdout);
    }
}
