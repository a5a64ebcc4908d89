use std::path::PathBuf;
use std::process::{Command, Output};

fn lqp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lqp")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn state_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("lqp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn valid_and_counterexample() {
    let o = lqp(&["valid", "-n", "2", "0_1 -> [X_1]1_1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "VALID\n");
    let o = lqp(&["valid", "-n", "2", "0_1 -> [X_1]0_1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("COUNTEREXAMPLE:\nn=2\n"));
}

#[test]
fn holds_on_a_state_file() {
    let bell = state_file("bell00.txt", "# beta_00\nn=2\n1\n0\n0\n1\n");
    let path = bell.to_str().unwrap();
    let o = lqp(&["holds", "-n", "2", "--state", path, "bell[0,0,1,2]"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(0), "TRUE\n"));
    let o = lqp(&["holds", "-n", "2", "--state", path, "bell[1,0,1,2]"]);
    assert_eq!((o.status.code(), stdout(&o).as_str()), (Some(1), "FALSE\n"));
    let o = lqp(&["holds", "-n", "3", "--state", path, "true"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bindings() {
    let zero = state_file("zero.txt", "n=1\n1\n0\n");
    let one = state_file("one.txt", "n=1\n0\n1\n");
    let b = format!("p=@{}", zero.display());
    assert_eq!(lqp(&["valid", "-n", "1", "-b", &b, "p -> 0_1"]).status.code(), Some(0));
    let span = format!("p=span:@{},@{}", zero.display(), one.display());
    assert_eq!(lqp(&["valid", "-n", "1", "-b", &span, "p"]).status.code(), Some(0));
    assert_eq!(lqp(&["valid", "-n", "1", "p"]).status.code(), Some(2));
    assert_eq!(lqp(&["valid", "-n", "1", "-b", "p=@/nonexistent/x", "p"]).status.code(), Some(2));
}

#[test]
fn syntax_errors_and_unsupported() {
    let o = lqp(&["valid", "-n", "2", "((("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(lqp(&["parse", "[adj(X_1 + Z_1)]0_1"]).status.code(), Some(0));
    assert_eq!(lqp(&["valid", "-n", "1", "[adj(X_1 + Z_1)]0_1"]).status.code(), Some(2));
    assert_eq!(lqp(&["valid", "-n", "2", "<T{1}>(0_1 & 1_2 | 1_1 & 0_2)"]).status.code(), Some(3));
    assert_eq!(lqp(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn parse_and_denote() {
    let o = lqp(&["parse", "[X_1;(p&q)?]p"]);
    assert_eq!(stdout(&o), "formula: [X_1; (p & q)?]p\n");
    let o = lqp(&["denote", "-n", "1", "X_1 + H_1"]);
    assert_eq!(stdout(&o), "branch 1:\n[0, 1]\n[1, 0]\nbranch 2:\n[1, 1]\n[1, -1]\n");
}

#[test]
fn verify_teleportation() {
    let o = lqp(&["verify", "teleportation"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS (12/12 instances, 4 branches)\n"));
    assert_eq!(lqp(&["verify", "nothing"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verify", "lemmas", "--seed", "7"][..],
        &["verify", "coherence", "--machine"][..],
        &["valid", "-n", "3", "ent[1,2](H_1) -> [CNOT_2_3]<T{3}>true"][..],
        &["eval", "-n", "2", "bell[0,1,1,2] | cmp{1}(0_1 & +_2)"][..],
    ] {
        let (a, b) = (lqp(args), lqp(args));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
