//! Exit-code contract and output determinism of the binary.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xyqubit")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sweep", "--observable", "entropy", "--out", "x.csv"][..],
        &["sweep", "--observable", "gap"],
        &["sweep", "--observable", "gap", "--res", "1", "--out", "x.csv"],
        &["sweep", "--observable", "gap", "--lmin", "2", "--lmax", "-2", "--out", "x.csv"],
        &["berry", "--r", "2"],
        &["berry", "--r", "2", "--theta", "1", "--segments", "2"],
        &["berry", "--r", "abc", "--theta", "1"],
        &["flux", "--r", "2", "--n", "8"],
        &["renner-teller", "--lambda", "-1"],
        &["renner-teller", "--lambda", "0"],
        &["renner-teller", "--lambda", "0.5", "--segments", "10"],
        &["crossings", "--threshold", "-1"],
        &["crossings", "--res", "1"],
        &["frobnicate"],
        &[],
    ] {
        assert_eq!(code(args), 2, "{args:?}");
    }
}

#[test]
fn domain_errors_exit_three() {
    for args in [
        &["berry", "--r", "1.0", "--theta", "1.0"][..],
        &["berry", "--r", "1.0000000001", "--theta", "1.0"],
        &["berry", "--r", "2", "--theta", "3.141592653589793"],
        &["berry", "--r", "2", "--theta", "1.5707963267948966", "--segments", "4"],
        &["berry", "--r", "0.5", "--theta", "1.0", "--inside-allowed", "false"],
        &["flux", "--r", "0.9", "--n", "256"],
        &["flux", "--r", "1", "--n", "64"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(3), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error: "));
    }
}

#[test]
fn io_errors_exit_one() {
    assert_eq!(code(&["sweep", "--observable", "gap", "--res", "5", "--out", "/nonexistent/g.csv"]), 1);
    assert_eq!(code(&["crossings", "--res", "401", "--out", "/nonexistent/c.csv"]), 1);
    assert_eq!(code(&["renner-teller", "--lambda", "1", "--profile-out", "/nonexistent/rt.csv"]), 1);
}

#[test]
fn stdout_lines_are_key_value_tokens() {
    let out = run(&["berry", "--r", "2", "--theta", "1.0471975511965976", "--segments", "2000"]);
    let text = stdout(&out);
    let keys: Vec<&str> = text.split_whitespace().map(|t| t.split('=').next().unwrap()).collect();
    assert_eq!(keys, ["beta_numeric", "beta_analytic", "abs_err"]);
    // twelve significant digits
    let analytic = text.split_whitespace().nth(1).unwrap();
    assert_eq!(analytic, "beta_analytic=-3.14159265359e0");

    let flux = stdout(&run(&["flux", "--r", "3", "--n", "256"]));
    assert!(flux.starts_with("flux=-2.51327412287e1 expected=-8*pi rel_err="), "{flux}");
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    for p in [&a, &b] {
        assert_eq!(code(&["sweep", "--observable", "fidelity", "--res", "51", "--out", path_str(p)]), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());

    let (c, d) = (dir.path().join("c.csv"), dir.path().join("d.csv"));
    let first = run(&["crossings", "--res", "201", "--out", path_str(&c)]);
    let second = run(&["crossings", "--res", "201", "--out", path_str(&d)]);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read(&c).unwrap(), std::fs::read(&d).unwrap());

    let args = ["renner-teller", "--lambda", "0.01", "--segments", "2000"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn sweep_rows_follow_resolution() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.csv");
    assert_eq!(code(&["sweep", "--observable", "gap", "--res", "101", "--out", path_str(&out)]), 0);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("lambda,gamma,value\n"));
    assert_eq!(text.lines().count(), 101 * 101 + 1);
    assert!(text.ends_with('\n'));
}

#[test]
fn renner_teller_profile() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("rt.csv");
    let run_out = run(&["renner-teller", "--lambda", "3", "--profile-out", path_str(&out), "--profile-res", "41"]);
    assert_eq!(run_out.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,e_even,e_odd"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 41);
    for row in &rows {
        assert!(row[1] <= row[2]);
        assert!((row[1] + (1.0 + row[0] * row[0]).sqrt()).abs() < 1e-12);
        assert_eq!(row[2], -1.0);
    }
    assert_eq!(rows[20][1], rows[20][2]);
}

#[test]
fn empty_crossings_still_writes_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c.csv");
    let run_out = run(&["crossings", "--res", "101", "--threshold", "1e-12", "--out", path_str(&out)]);
    assert_eq!(run_out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&run_out.stderr).contains("warning: no crossings found"));
    assert!(stdout(&run_out).starts_with("crossings=0 "));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "lambda,gamma\n");
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&["--help"]), 0);
    assert_eq!(code(&["--version"]), 0);
    assert_eq!(code(&["berry", "--help"]), 0);
}
