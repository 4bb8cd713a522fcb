//! Black-box tests of the binary: exit codes, output formats, determinism.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_dunkl-isp"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("dunkl-cli-tests").join(name);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn mlf_prints_known_values() {
    let out = bin().args(["mlf", "1", "1", "-1"]).output().unwrap();
    assert!(out.status.success());
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - (-1.0f64).exp()).abs() < 1e-14);

    let out = bin().args(["mlf", "0.5", "1", "0"]).output().unwrap();
    assert_eq!(stdout(&out).trim(), "1");

    let out = bin().args(["mlf", "0.5", "1", "-1"]).output().unwrap();
    let v: f64 = stdout(&out).trim().parse().unwrap();
    assert!((v - 0.4275835761558).abs() < 1e-12);
}

#[test]
fn mlf_rejects_positive_argument_with_exit_2() {
    let out = bin().args(["mlf", "0.5", "1", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(!String::from_utf8_lossy(&out.stderr).is_empty());
}

#[test]
fn bad_config_exits_2() {
    let dir = tmp("bad-config");
    let cfg = dir.join("bad.conf");
    std::fs::write(&cfg, "params.gamma = 2.0\n").unwrap();
    let out = bin()
        .args(["inverse", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    std::fs::write(&cfg, "no equals sign\n").unwrap();
    let out = bin()
        .args(["forward", "--config", cfg.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin()
        .args(["forward", "--config", dir.join("missing.conf").to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn forward_zero_data_writes_zero_field() {
    let dir = tmp("fwd-zero");
    let out = bin()
        .args(["forward", "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("u.csv")).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "t,x,re,im");
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[2], "0");
        assert_eq!(cols[3], "0");
    }
    assert!(dir.join("u_meta.json").exists());
}

#[test]
fn stability_test_is_deterministic_and_linear_in_epsilon() {
    let run = |dir: &Path| {
        let out = bin()
            .args(["stability-test", "--epsilons", "1,0.25", "--out", dir.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(out.status.success());
        std::fs::read(dir.join("table1.csv")).unwrap()
    };
    let a = run(&tmp("stab-a"));
    let b = run(&tmp("stab-b"));
    assert_eq!(a, b, "identical invocations must be byte-identical");

    let text = String::from_utf8(a).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 2);
    for col in 1..4 {
        let ratio = rows[1][col] / rows[0][col];
        assert!((ratio - 0.25).abs() <= 1e-10);
    }
}

#[test]
fn stability_test_emits_profiles_on_request() {
    let dir = tmp("stab-profiles");
    let out = bin()
        .args(["stability-test", "--emit-profiles", "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.join("f_profile.csv").exists());
    assert!(dir.join("u_profile.csv").exists());
    let f = std::fs::read_to_string(dir.join("f_profile.csv")).unwrap();
    assert!(f.starts_with("# physical,-0.5,"));
}

#[test]
fn transform_gaussian_matches_closed_form() {
    let dir = tmp("transform");
    let cfg = dir.join("t.conf");
    std::fs::write(&cfg, "data.input = gaussian(1,0,1)\n").unwrap();
    let out = bin()
        .args(["transform", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.join("transformed.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# spectral,-0.5,"));
    assert_eq!(lines.next().unwrap(), "coordinate,re,im");
    for line in lines {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let expect = (1.0 / 2.0f64.sqrt()) * (-cols[0] * cols[0] / 4.0).exp();
        assert!((cols[1] - expect).abs() < 1e-6, "lambda={}", cols[0]);
        assert!(cols[2].abs() < 1e-8);
    }
}

#[test]
fn transform_round_trip_through_files() {
    let dir = tmp("round-trip");
    let fwd_cfg = dir.join("fwd.conf");
    std::fs::write(&fwd_cfg, "data.input = gaussian(1,0,1)\n").unwrap();
    assert!(bin()
        .args(["transform", "--config", fwd_cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .status()
        .unwrap()
        .success());
    std::fs::rename(dir.join("transformed.csv"), dir.join("fhat.csv")).unwrap();

    let inv_cfg = dir.join("inv.conf");
    std::fs::write(
        &inv_cfg,
        format!("data.input = {}\n", dir.join("fhat.csv").display()),
    )
    .unwrap();
    assert!(bin()
        .args([
            "transform",
            "--config",
            inv_cfg.to_str().unwrap(),
            "--direction",
            "inverse",
            "--out",
            dir.to_str().unwrap(),
        ])
        .status()
        .unwrap()
        .success());

    let text = std::fs::read_to_string(dir.join("transformed.csv")).unwrap();
    for line in text.lines().skip(2) {
        let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
        let expect = (-cols[0] * cols[0]).exp();
        assert!((cols[1] - expect).abs() < 1e-6);
    }
}

#[test]
fn inverse_sample_case_writes_recovered_pair() {
    let dir = tmp("inverse-sample");
    let cfg = dir.join("i.conf");
    std::fs::write(
        &cfg,
        "data.phi = zero\ndata.psi = gaussian(1,0,1)\n",
    )
    .unwrap();
    let out = bin()
        .args(["inverse", "--config", cfg.to_str().unwrap(), "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(out.status.success());
    // f(x) = e^{-x^2}(3-4x^2)/(1-e^{-1}) for the pinned defaults
    let c = 1.0 - (-1.0f64).exp();
    let text = std::fs::read_to_string(dir.join("f.csv")).unwrap();
    for line in text.lines().skip(2) {
        let cols: Vec<f64> = line.split(',').map(|v| v.parse().unwrap()).collect();
        let x = cols[0];
        let expect = (-x * x).exp() * (3.0 - 4.0 * x * x) / c;
        assert!((cols[1] - expect).abs() < 1e-4, "x={x}");
    }
    let meta = std::fs::read_to_string(dir.join("u_meta.json")).unwrap();
    assert!(meta.contains("conditioning"));
}
