use std::io::Write;
use std::process::{Command, Output, Stdio};

const DEMO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/demo.tsv");

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambda-dcs")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_prints_sorted_values() {
    let o = run(&["eval", "--kb", DEMO, "PlaceOfBirth.Seattle"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "Alice\nCarol\n");
    let o = run(&["eval", "--kb", DEMO, "--json", "count(Type.USState)"]);
    assert_eq!(stdout(&o), "[3]\n");
    let o = run(&["eval", "R[Area].Washington | Washington"]);
    assert_eq!(stdout(&o), "Washington\n71\n");
}

#[test]
fn exit_codes_partition_errors() {
    let o = run(&["eval", "--kb", DEMO, "PlaceOfBirth.("]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("position"), "{}", stderr(&o));
    assert_eq!(run(&["eval", "--kb", DEMO, "--strict", "Nope.Seattle"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--kb", "/nonexistent.tsv", "Seattle"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "--kb", DEMO, "argmax(Type.USState, Border)"]).status.code(), Some(2));
    let o = run(&["sparql", "(mu x . Children.Influenced.x)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("mu"));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn lc_and_sparql() {
    assert_eq!(
        stdout(&run(&["lc", "PlacesLived.Location.Seattle"])),
        "lambda x . exists y . PlacesLived(x,y) & Location(y,Seattle)\n"
    );
    assert_eq!(stdout(&run(&["lc", "Seattle"])), "lambda x . [x = Seattle]\n");
    assert_eq!(
        stdout(&run(&["lc", "--raw", "PlaceOfBirth.Seattle"])),
        "lambda x . exists y . PlaceOfBirth(x,y) & [y = Seattle]\n"
    );
    let o = run(&["sparql", "PlaceOfBirth.Seattle"]);
    assert_eq!(stdout(&o), "SELECT DISTINCT ?x WHERE {\n  ?x :PlaceOfBirth :Seattle .\n}\n");
    let o = run(&["sparql", "--prefix", "http://ex.org/", "Type.USState"]);
    assert!(stdout(&o).starts_with("PREFIX : <http://ex.org/>\n"));
}

#[test]
fn check_reports_and_is_reproducible() {
    let o = run(&["check", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "trials=0 mismatches=0\n");
    let a = run(&["check", "--kb", DEMO, "--trials", "200", "--depth", "3", "--seed", "7"]);
    let b = run(&["check", "--kb", DEMO, "--trials", "200", "--depth", "3", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a), "trials=200 mismatches=0\n");
}

#[test]
fn repl_session() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_lambda-dcs"))
        .args(["repl", "--kb", DEMO])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"Profession.Scientist & PlaceOfBirth.Seattle\n!!(\n:lc Seattle\n:sparql (mu x . x)\n:quit\n")
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "Alice");
    assert!(lines[1].starts_with("error: "));
    assert!(out.contains("lambda x . [x = Seattle]\n"));
    assert!(out.contains("error: unsupported construct: mu"));
}
