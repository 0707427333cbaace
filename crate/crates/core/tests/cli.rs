use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;
use triplesym::cli::ResultRecord;

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triplesym"))
        .args(args)
        .env("TRIPLESYM_BETA_CACHE", dir.join("beta.json"))
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn record(o: &Output) -> ResultRecord {
    assert_eq!(o.status.code(), Some(0), "{}", stderr(o));
    serde_json::from_str(stdout(o).trim()).unwrap()
}

#[test]
fn redei_record() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["redei", "5", "29", "109", "--json"]);
    let out = stdout(&o);
    assert!(out.starts_with(r#"{"n":2,"exponent":0,"rendered":"+1","#), "{out}");
    let r = record(&o);
    assert_eq!(r.triple, ["5", "29", "109"]);
    // Parsing and re-rendering is the identity.
    assert_eq!(r.to_json(), out.trim());
    let v = record(&run(dir.path(), &["redei", "29", "5", "109", "--json", "--verify"]));
    assert_eq!((v.exponent, v.verified), (r.exponent, true));
    assert!(dir.path().join("beta.json").exists());
}

#[test]
fn inadmissible_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    for (args, reason) in [
        (&["redei", "3", "5", "13"][..], "NotOneModFour"),
        (&["redei", "5", "5", "13"], "NotDistinct"),
        (&["redei", "5", "9", "13"], "NotPrime"),
        (&["redei", "5", "x", "13"], "NotAnInteger"),
        (&["cubic", "7", "17", "53"], "NotOneModNine"),
        (&["cubic", "17", "53", "19"], "NotPrime"),
        (&["cubic", "17", "71", "-2,3"], "CubicObstruction"),
        (&["cubic", "-14,-3", "17", "53"], "UnsupportedPrime"),
        (&["scan", "--n", "3", "--bound", "50"], "UnsupportedModulus"),
        (&["scan", "--bound", "10001"], "BoundTooLarge"),
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(stderr(&o).starts_with(&format!("error[{reason}]")), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn cubic_record_and_theta_files() {
    let dir = TempDir::new().unwrap();
    let saved = dir.path().join("theta.json");
    let o = run(dir.path(), &["cubic", "17", "53", "71", "--json", "--save-theta", saved.to_str().unwrap()]);
    let r = record(&o);
    assert_eq!((r.n, r.exponent, r.cohomological_exponent, r.verified), (3, 1, Some(2), true));
    assert_eq!(r.rendered, "ζ^1");
    assert_eq!(r.to_json(), stdout(&o).trim());
    let again = record(&run(dir.path(), &["cubic", "-17,0", "53", "71", "--json", "--theta", saved.to_str().unwrap()]));
    assert_eq!(again, r);

    let text = fs::read_to_string(&saved).unwrap().replacen("39797", "39798", 1);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, text).unwrap();
    let o = run(dir.path(), &["cubic", "17", "53", "71", "--theta", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[ThetaRejected]"), "{}", stderr(&o));

    let o = run(dir.path(), &["cubic", "17", "53", "71", "--search-bound", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("≤ 1"), "{}", stderr(&o));
}

#[test]
fn scan_output() {
    let dir = TempDir::new().unwrap();
    let o = run(dir.path(), &["scan", "--n", "2", "--bound", "110"]);
    assert!(stdout(&o).lines().any(|l| l == "5,29,109,0,+1,true"));
    assert!(stdout(&o).lines().skip(1).all(|l| l.ends_with(",true")));
    let o = run(dir.path(), &["scan", "--n", "2", "--bound", "5"]);
    assert_eq!(stdout(&o), "p1,p2,p3,exponent,symbol,verified\n");
    let o = run(dir.path(), &["scan", "--bound", "110", "--out", "json", "--no-cache"]);
    let rows: Vec<ResultRecord> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(rows.iter().any(|r| r.triple == ["5", "29", "109"] && r.exponent == 0));
}

#[test]
fn scan_is_deterministic_across_jobs_and_cache_state() {
    let dir = TempDir::new().unwrap();
    let cold = run(dir.path(), &["scan", "--n", "2", "--bound", "300", "--jobs", "8"]);
    let warm = run(dir.path(), &["scan", "--n", "2", "--bound", "300", "--jobs", "1"]);
    let none = run(dir.path(), &["scan", "--n", "2", "--bound", "300", "--jobs", "3", "--no-cache"]);
    assert_eq!(cold.status.code(), Some(0));
    assert!(stdout(&cold).lines().count() > 100);
    assert_eq!(stdout(&cold), stdout(&warm));
    assert_eq!(stdout(&cold), stdout(&none));
}

#[test]
fn corrupt_cache_is_fatal() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("beta.json");
    for text in ["not json", r#"{"entries":{"5,29":{"x":"1","y":"2","z":"3"}}}"#, r#"{"entries":{"5":{"x":"1","y":"0","z":"0"}}}"#] {
        fs::write(&path, text).unwrap();
        let o = run(dir.path(), &["redei", "5", "29", "109"]);
        assert_eq!(o.status.code(), Some(1), "{text}");
        assert!(stderr(&o).contains("corrupt β cache"), "{}", stderr(&o));
        assert_eq!(fs::read_to_string(&path).unwrap(), text);
        assert_eq!(run(dir.path(), &["redei", "5", "29", "109", "--no-cache"]).status.code(), Some(0));
    }
}

#[test]
fn verify_suites() {
    let dir = TempDir::new().unwrap();
    for suite in ["lemma1", "lemma2", "alternating", "heisenberg", "eisenstein"] {
        let o = run(dir.path(), &["verify", "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).starts_with("PASS"), "{}", stdout(&o));
    }
    let o = run(dir.path(), &["verify", "--suite", "reciprocity", "--suite", "oracle", "--bound", "150"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 2);
    // No θ at height 0, so the cubic suite is vacuous and fails.
    let o = run(dir.path(), &["verify", "--suite", "cubic", "--search-bound", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("vacuous"), "{}", stdout(&o));
}
