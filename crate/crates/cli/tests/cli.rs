use std::process::{Command, Output};

use ptc_core::TcCertificate;

fn ptc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ptc")).args(args).output().expect("run ptc")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_smallest_case() {
    let out = ptc(&["verify", "--n", "1", "--m", "2", "--k", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("tc = 3 (lower 3, upper 3)"), "{text}");
    assert!(text.contains("factors: 3"));
    assert!(text.contains("  (w(1,3) - w'(1,3))"));
    assert!(text.contains("witness: "));
}

#[test]
fn verify_grid_defaults_to_k3() {
    for (n, m) in [(2, 3), (3, 5)] {
        let out = ptc(&["verify", "--n", &n.to_string(), "--m", &m.to_string()]);
        assert!(out.status.success());
        assert!(stdout(&out).contains(&format!("tc = {}", 2 * n + m - 1)));
    }
}

#[test]
fn verify_rejects_even_k() {
    let out = ptc(&["verify", "--n", "1", "--m", "2", "--k", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("even k unsupported"), "{}", stderr(&out));
}

#[test]
fn verify_rejects_bad_spec() {
    let out = ptc(&["verify", "--n", "0", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = ptc(&["verify", "--n", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let out = ptc(&["verify", "--n", "2", "--m", "3", "--json", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = std::fs::read_to_string(&path).unwrap();
    let cert = TcCertificate::from_json(&text).unwrap();
    assert_eq!((cert.n, cert.m, cert.k, cert.tc_exact), (2, 3, 3, Some(6)));
    cert.check().unwrap();
    assert!(text.contains("\"schema\": 1"), "{text}");
}

#[test]
fn basis_listing() {
    let out = ptc(&["basis", "--n", "1", "--m", "2", "--grade", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "8");
    assert_eq!(lines.len(), 9);

    let out = ptc(&["basis", "--n", "1", "--m", "2", "--grade", "4"]);
    assert_eq!(stdout(&out), "0\n");

    let out = ptc(&["basis", "--n", "1", "--m", "2", "--grade", "0"]);
    assert_eq!(stdout(&out), "1\n1\n");

    let out = ptc(&["basis", "--n", "1", "--m", "3", "--grade", "1", "--space", "b"]);
    assert_eq!(stdout(&out).lines().next(), Some("3"));
}

#[test]
fn eval_examples() {
    let out = ptc(&["eval", "(w(1,3)-w'(1,3))^2*(w(2,3)-w'(2,3))", "--n", "1", "--m", "2"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-2*w(1,2)*w(2,3)*w'(1,3) + 2*w(1,2)*w(1,3)*w'(2,3)\n");

    let out = ptc(&["eval", "w(1,3)*w(2,3)", "--n", "1", "--m", "2"]);
    assert_eq!(stdout(&out), "w(1,2)*w(2,3) - w(1,2)*w(1,3)\n");

    let out = ptc(&["eval", "w(1,3)*w(2,3) - w(1,2)*w(2,3) + w(1,2)*w(1,3)", "--n", "1", "--m", "2"]);
    assert_eq!(stdout(&out), "0\n");

    let out = ptc(&["eval", "-w(1,3)^2 + w(3,1)", "--n", "1", "--m", "2"]);
    assert_eq!(stdout(&out), "-w(1,3)\n");
}

#[test]
fn eval_errors() {
    let out = ptc(&["eval", "w(1,", "--n", "1", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("offset 4"), "{err}");
    assert!(err.contains("      ^"), "{err}");

    let out = ptc(&["eval", "w(1,9)", "--n", "1", "--m", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = ptc(&["eval", "w(1,2)", "--n", "1", "--m", "2", "--space", "q"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn search_results() {
    let out = ptc(&["search", "--n", "1", "--m", "2", "--max-length", "4"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("best nonzero length: 3"));

    let out = ptc(&["search", "--n", "1", "--m", "3", "--max-length", "4", "--threads", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("best nonzero length: 4"));

    let out = ptc(&["search", "--n", "1", "--m", "2"]);
    assert!(stdout(&out).contains("best nonzero length: 3"));
}

#[test]
fn search_budget() {
    let out = ptc(&["search", "--n", "1", "--m", "2", "--max-length", "4", "--max-candidates", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("(partial)"));
}

#[test]
fn poincare_and_expansion() {
    let out = ptc(&["poincare", "--n", "1", "--m", "2"]);
    assert!(stdout(&out).starts_with("1 + 5t + 8t^2 + 4t^3\n"));
    let out = ptc(&["poincare", "--n", "2", "--m", "2", "--space", "x"]);
    assert!(stdout(&out).starts_with("1 + 5t + 6t^2\n"));

    let out = ptc(&["lemma95", "--n", "1", "--m", "3", "--t", "1,2,3", "--p", "4", "--primed"]);
    assert!(out.status.success());
    assert!(stdout(&out).ends_with("equal\n"));
    let out = ptc(&["lemma95", "--n", "1", "--m", "3", "--t", "1,2", "--p", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
