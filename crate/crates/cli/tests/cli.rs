use std::io::Write;
use std::process::{Command, Output, Stdio};

use katolab::invariants::InvariantReport;
use serde_json::Value;

fn katolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_katolab"))
        .args(args)
        .stdin(Stdio::null())
        .output()
        .unwrap()
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_katolab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn factor_prints_the_word() {
    let o = katolab(&["factor", "0,1;1,2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "n=2:[1,2]");
}

#[test]
fn non_product_exits_with_3() {
    let o = katolab(&["factor", "2,0;0,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("NotAProduct"));
    let o = katolab(&["invariants", "n=2:[2,2]"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn malformed_input_exits_with_2() {
    assert_eq!(katolab(&["factor", "1,2;3"]).status.code(), Some(2));
    assert_eq!(katolab(&["compose", "n=2:[3]"]).status.code(), Some(2));
    assert_eq!(katolab(&["dynamics", "1,2;2,5", "--action", "eval"]).status.code(), Some(2));
    assert_eq!(katolab(&["bogus"]).status.code(), Some(2));
}

#[test]
fn invariants_json_report() {
    let o = katolab(&["invariants", "1,0,2;0,0,1;0,1,2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["k"], 2);
    assert_eq!(v["l"], 1);
    assert_eq!(v["euler"], 4);
    assert_eq!(v["pi1_M_minus_C"]["description"], "ℤ ⋉ ℤ^2");
}

#[test]
fn report_json_is_a_fixpoint() {
    let o = katolab(&["--format", "json", "invariants", "n=4:[3,4,3,4]"]);
    let text = stdout(&o);
    let report: InvariantReport = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&report).unwrap(), text.trim_end());
    assert_eq!(report.anticanonical_h0, Some(10.into()));
}

#[test]
fn factor_json_feeds_compose() {
    let o = katolab(&["--format", "json", "factor", "1,0,2;0,0,1;0,1,2"]);
    let word = stdout(&o);
    let o = katolab(&["compose", word.trim()]);
    assert_eq!(stdout(&o).trim(), "1,0,2;0,0,1;0,1,2");
}

#[test]
fn input_sources() {
    let o = with_stdin(&["factor"], "0,1;1,2\n");
    assert_eq!(stdout(&o).trim(), "n=2:[1,2]");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "n=3:[2,3]").unwrap();
    let path = f.path().to_str().unwrap();
    let o = katolab(&["compose", "--file", path]);
    assert_eq!(stdout(&o).trim(), "1,0,2;0,0,1;0,1,2");
    let o = katolab(&["compose", "n=2:[1]", "--file", path]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn batch_writes_one_record_per_line() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "0,1;1,2\n2,0;0,1\nnot a matrix\n\nn=3:[2,3]").unwrap();
    let o = katolab(&["invariants", "--batch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0]["k"], 2);
    assert_eq!(lines[1]["kind"], "not_kato");
    assert_eq!(lines[2]["kind"], "invalid_input");
    assert_eq!(lines[2]["line"], 3);
    assert!(lines[2]["error"].is_string());
    assert_eq!(lines[3]["l"], 1);
}

#[test]
fn batch_edge_cases() {
    let f = tempfile::NamedTempFile::new().unwrap();
    let o = katolab(&["invariants", "--batch", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    let o = katolab(&["invariants", "--batch", "/nonexistent/katolab-input"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sampling_is_deterministic() {
    let args = ["dynamics", "n=3:[1,3,2]", "--action", "contract12", "--samples", "200", "--seed", "7", "--format", "json"];
    let a = katolab(&args);
    let b = katolab(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn dynamics_actions() {
    let o = katolab(&["dynamics", "1,2;2,5", "--action", "stable", "--point", "2;1/3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["membership"]["in"], 1);
    let o = katolab(&["dynamics", "n=2:[1]", "--action", "eval", "--point", "1/2;1/3"]);
    assert_eq!(stdout(&o).trim(), "1/3+0i;1/6+0i");
    let o = katolab(&["dynamics", "n=3:[2,3]", "--action", "orbit", "--point", "1/2;1/3;1/4", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["domain_hits"].as_array().unwrap().len(), 1);
    assert!(v["orbit"].is_array());
    let o = katolab(&["dynamics", "n=2:[1,2]", "--action", "stable", "--point", "1;0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_checks() {
    let o = katolab(&["verify", "n=4:[3,4]", "--check", "generators"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("6 independent invariant fields"));
    let o = katolab(&["verify", "1,2;2,5", "--check", "tangent-nullity", "--degree", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let o = katolab(&["verify", "n=3:[2,3]", "--check", "tangent-nullity"]);
    assert_eq!(o.status.code(), Some(2));
    let o = katolab(&["verify", "n=3:[2,3,2,3]", "--format", "json", "--degree", "3"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn digit_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_katolab"))
        .args(["compose", "n=2:[1,2,1,2,1,2,1,2]"])
        .env("KATOLAB_DIGIT_CAP", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}
