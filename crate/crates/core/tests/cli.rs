mod common;

use std::io::Write;
use std::process::{Command, Output};

use common::*;
use kpower::cli::{parse_closed_form_json, parse_matrix_input};
use num_complex::Complex64;
use tempfile::NamedTempFile;

const EIG223: &str = r#"{"entries":[[4,-2,2],[-5,7,-5],[-6,6,-4]]}"#;
const SURD17: &str = r#"{"entries":[[0,0,1,0,1],[1,0,0,0,1],[0,0,0,1,1],[0,1,0,0,1],[1,1,1,1,0]]}"#;
const NILPOTENT4: &str = "0 2 1 3\n0 0 -2 4\n0 0 0 5\n0 0 0 0\n";
const PLUS_MINUS_TWO: &str = "1 1 1 0\n1 1 1 -1\n0 0 -1 1\n0 0 1 -1\n";

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn kpower(args: &[&str], matrix: &NamedTempFile) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kpower"));
    cmd.args(args).arg("--matrix").arg(matrix.path());
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn symbolic_power_with_eigenvalues_2_2_3() {
    let m = file(EIG223);
    let o = kpower(&["power", "--symbolic"], &m);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("[1,1] = -2^k + 2*3^k\n"), "{text}");
    // invertible: no threshold message
    assert!(!text.contains("valid for"));
    let a = eig223();
    for ((i, j), e) in plain_entries(&text) {
        for k in 0..=12i64 {
            assert_eq!(
                eval_exact(&e, &[("k", kpower::Rational::from_integer(k.into()))]).unwrap(),
                a.pow(k as u64)[(i, j)]
            );
        }
    }
}

#[test]
fn integer_powers_and_inverse() {
    let m = file(NILPOTENT4);
    let o = kpower(&["power", "--k", "2"], &m);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_matrix_input(&o.stdout).unwrap(), nilpotent4().pow(2));
    assert!(stdout(&o).contains("-10"));

    let m = file(EIG223);
    let o = kpower(&["power", "--k", "-1", "--format", "json"], &m);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_matrix_input(&o.stdout).unwrap(), eig223_inverse());
    let o = kpower(&["power", "--k", "1", "--inverse"], &m);
    assert_eq!(parse_matrix_input(&o.stdout).unwrap(), eig223_inverse());
}

#[test]
fn inverse_closed_form_renders_reciprocal_bases() {
    let m = file(EIG223);
    let o = kpower(&["power", "--inverse"], &m);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("[1,1] = 2*3^(-k) - 2^(-k)"), "{text}");
    let b = eig223_inverse();
    for ((i, j), e) in plain_entries(&text) {
        for k in 1..=6i64 {
            assert_eq!(
                eval_exact(&e, &[("k", kpower::Rational::from_integer(k.into()))]).unwrap(),
                b.pow(k as u64)[(i, j)]
            );
        }
    }
}

#[test]
fn singular_messages_and_thresholds() {
    let m = file(NILPOTENT4);
    let o = kpower(&["power", "--symbolic"], &m);
    let text = stdout(&o);
    assert!(text.contains("valid for k >= 4 (paper bound 4)"), "{text}");
    assert_eq!(text.lines().filter(|l| l.ends_with("= 0")).count(), 16);

    let m6 = file(PLUS_MINUS_TWO);
    let text = stdout(&kpower(&["power", "--symbol", "n"], &m6));
    assert!(text.contains("valid for n >= 2 (paper bound 4)"), "{text}");
    assert!(text.contains("[3,3] = (-1)^n * 2^(n-1)"), "{text}");
}

#[test]
fn exit_codes() {
    let m5 = file(NILPOTENT4);
    assert_eq!(kpower(&["power", "--k", "-1"], &m5).status.code(), Some(4));
    assert_eq!(kpower(&["power", "--inverse"], &m5).status.code(), Some(4));
    assert_eq!(kpower(&["eval", "--k", "3"], &m5).status.code(), Some(4));
    assert_eq!(kpower(&["check", "--kmax", "2"], &m5).status.code(), Some(2));
    assert_eq!(kpower(&["det"], &file(r#"{"entries":[[1,2],[3]]}"#)).status.code(), Some(3));
    assert_eq!(kpower(&["det"], &file("1 2 3\n4 5 6\n")).status.code(), Some(3));
    assert_eq!(kpower(&["det"], &file("1 x\n2 3\n")).status.code(), Some(2));
    assert_eq!(kpower(&["det"], &file(r#"{"entries":[["1/0"]]}"#)).status.code(), Some(2));
    assert_eq!(kpower(&["power", "--k", "2", "--symbolic"], &m5).status.code(), Some(2));
    let missing =
        Command::new(env!("CARGO_BIN_EXE_kpower")).args(["det", "--matrix", "/nonexistent/m.json"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
    let help = Command::new(env!("CARGO_BIN_EXE_kpower")).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&help.stdout).contains("charpoly"));
}

#[test]
fn eval_det_charpoly_check() {
    let m = file(EIG223);
    let o = kpower(&["eval", "--k", "-1"], &m);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(parse_matrix_input(&o.stdout).unwrap(), eig223_inverse());
    assert_eq!(stdout(&kpower(&["det"], &m)), "12\n");
    assert_eq!(stdout(&kpower(&["det", "--format", "json"], &m)), "{\"determinant\":\"12\"}\n");
    assert_eq!(stdout(&kpower(&["charpoly"], &m)), "x^3 - 7*x^2 + 16*x - 12\nlow degree: 0\n");
    let m6 = file(PLUS_MINUS_TWO);
    assert_eq!(stdout(&kpower(&["charpoly"], &m6)), "x^4 - 4*x^2\nlow degree: 2\n");
    assert_eq!(
        stdout(&kpower(&["eval", "--k", "5"], &m6)).lines().next().unwrap().split_whitespace().next(),
        Some("16")
    );

    let m4 = file(SURD17);
    let o = kpower(&["check", "--kmax", "10"], &m4);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS"));
}

#[test]
fn surd_output_with_sqrt17() {
    let m = file(SURD17);
    let text = stdout(&kpower(&["power"], &m));
    assert!(text.contains("[1,5] = sqrt(17)/17*(1/2 + sqrt(17)/2)^k - sqrt(17)/17*(1/2 - sqrt(17)/2)^k"), "{text}");
    let a = surd17();
    for ((i, j), e) in plain_entries(&text) {
        for k in 0..=10i64 {
            let (got, scale) = eval_scaled(&e, &[("k", Complex64::new(k as f64, 0.0))]);
            assert!(close_scaled(got, &a.pow(k as u64)[(i, j)], 1e-9, scale), "[{i},{j}] k = {k}");
        }
    }
    let latex = stdout(&kpower(&["power", "--format", "latex"], &m));
    assert!(latex.contains("\\begin{bmatrix}") && latex.contains("\\sqrt{17}"));
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let m = file(PLUS_MINUS_TWO);
    let first = kpower(&["power", "--format", "json"], &m);
    let second = kpower(&["power", "--format", "json"], &m);
    assert_eq!(first.stdout, second.stdout);
    let parsed = parse_closed_form_json(&stdout(&first)).unwrap();
    assert_eq!((parsed.dim, parsed.threshold, parsed.paper_threshold, parsed.invertible), (4, 2, 4, false));
    for k in 2..=10 {
        assert_eq!(parsed.eval(k).unwrap(), plus_minus_two().pow(k as u64));
    }
}

#[test]
fn stdin_input() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kpower"))
        .args(["det", "--matrix", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1/6 1/3 -1/3\n5/6 -1/3 5/6\n1 -1 3/2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(String::from_utf8(o.stdout).unwrap(), "1/12\n");
}

#[test]
fn in_process_runner() {
    let m = file(EIG223);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let path = m.path().to_str().unwrap();
    let code = kpower::cli::run(["kpower", "det", "--matrix", path], &mut out, &mut err);
    assert_eq!((code, out.as_slice()), (0, b"12\n".as_slice()));
    let code = kpower::cli::run(["kpower", "bogus"], &mut out, &mut err);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
}
