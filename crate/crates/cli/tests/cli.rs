//! Exit codes, config precedence and report shape of the `wavesym` binary.

mod common;

use std::process::{Command, Output};

fn wavesym(args: &[&str]) -> Output {
    Command::new(common::bin()).args(args).output().unwrap()
}

fn report(args: &[&str]) -> serde_json::Value {
    let out = wavesym(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn zset_example() {
    let r = report(&["zset", "--m", "0", "--n", "1"]);
    let radii = r["radii"].as_array().unwrap();
    assert_eq!(radii.len(), 2);
    assert!((radii[0].as_f64().unwrap() - 0.29559774252208).abs() < 1e-12);
    assert_eq!(radii[1].as_f64(), Some(1.0));
}

#[test]
fn winding_example() {
    let r = report(&["winding", "--m", "0", "--n", "6", "--grid", "128"]);
    assert_eq!(r["winding"], 6);
    assert_eq!(r["knot"], serde_json::json!([2, 6]));
}

#[test]
fn tangential_case_has_no_winding() {
    let r = report(&["winding", "--m", "0", "--n", "2", "--grid", "64"]);
    assert_eq!(r["transversal"], false);
    assert!(r["winding"].is_null());
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["zset", "--m", "3", "--n", "1"][..],
        &["zset", "--m", "0", "--n", "7"],
        &["zset", "--m", "0"],
        &["fresnel", "--epsilon", "2,2,3"],
        &["fresnel", "--epsilon", "2,-1,3"],
        &["sphere", "--m", "0", "--n", "1", "--tol-contour", "0"],
        &["zset", "--m", "0", "--n", "1", "--bogus", "1"],
        &["frobnicate"],
        &["eigenline", "--config", "/nonexistent/wavesym.cfg"],
    ] {
        assert_eq!(wavesym(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn numerical_failure_exits_3() {
    // nearly uniaxial: the optic axes sit closer than the search resolution
    let out = wavesym(&["eigenline", "--epsilon", "2.0,2.0001,3.0"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn config_file_and_flag_precedence() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("run.cfg");
    std::fs::write(&cfg, "# base settings\nm = 0\nn = 3\ngrid = 64\n").unwrap();
    let path = cfg.to_str().unwrap();
    let r = report(&["winding", "--config", path]);
    assert_eq!(
        (r["m"].as_u64(), r["n"].as_u64(), r["winding"].as_i64()),
        (Some(0), Some(3), Some(3))
    );
    let r = report(&["winding", "--config", path, "--n", "5"]);
    assert_eq!(r["winding"], 5);
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(wavesym(&["winding", "--config", path]).status.code(), Some(2));
}

#[test]
fn artifacts_written() {
    let tmp = tempfile::tempdir().unwrap();
    let csv = tmp.path().join("k.csv");
    report(&["knots", "--m", "0", "--n", "4", "--out-csv", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("strand,theta,phi,x,y,z\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("1,")).count(), 256);
    let csv = tmp.path().join("s.csv");
    report(&[
        "sphere",
        "--m",
        "0",
        "--n",
        "1",
        "--grid",
        "64",
        "--out-csv",
        csv.to_str().unwrap(),
    ]);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("curve_id,x1,x2,kernel_angle_lifted\n"));
    assert!(text.lines().any(|l| l.starts_with("1,")));
}
