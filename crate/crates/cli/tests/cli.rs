use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn ulrich(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ulrich"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn generated(dir: &TempDir, args: &[&str]) -> std::path::PathBuf {
    let path = dir.path().join("rep.json");
    let mut full = vec!["gca", "generate", "--out", path_str(&path)];
    full.extend_from_slice(args);
    let out = ulrich(&full);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    path
}

#[test]
fn generate_then_verify() {
    let dir = TempDir::new().unwrap();
    let rep = generated(&dir, &["--d", "3", "--n", "3", "--roots", "1,2,-1"]);
    let out = ulrich(&["gca", "verify", path_str(&rep)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).starts_with("PASS"));

    let json = ulrich(&["--format", "json", "gca", "verify", path_str(&rep)]);
    let v: Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn altered_entry_fails_verification() {
    let dir = TempDir::new().unwrap();
    let rep = generated(&dir, &["--d", "2", "--n", "2"]);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    v["matrices"][0][0][0] = Value::String("5".into());
    fs::write(&rep, v.to_string()).unwrap();
    let out = ulrich(&["gca", "verify", path_str(&rep)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("FAIL entry"), "{}", stdout(&out));
}

#[test]
fn truncated_file_is_malformed() {
    let dir = TempDir::new().unwrap();
    let rep = generated(&dir, &["--d", "2", "--n", "2"]);
    let text = fs::read_to_string(&rep).unwrap();
    fs::write(&rep, &text[..text.len() / 2]).unwrap();
    let out = ulrich(&["gca", "verify", path_str(&rep)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).starts_with("error:"));
}

#[test]
fn missing_file_is_malformed() {
    let out = ulrich(&["gca", "verify", "/nonexistent/rep.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn irreducible_and_charpoly() {
    let dir = TempDir::new().unwrap();
    let rep = generated(&dir, &["--d", "3", "--n", "2"]);
    let out = ulrich(&["gca", "irreducible", path_str(&rep)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    // odd generator count: the algebra has a centre and the rep splits
    let rep = generated(&dir, &["--d", "2", "--n", "3"]);
    let out = ulrich(&["gca", "irreducible", path_str(&rep)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("algebra dimension 8 of 16"), "{}", stdout(&out));
    let out = ulrich(&["gca", "charpoly", path_str(&rep)]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS (w = x4"), "{}", stdout(&out));
}

#[test]
fn presentation_round_trips_through_det() {
    let dir = TempDir::new().unwrap();
    let rep = generated(&dir, &["--d", "2", "--n", "2"]);
    let pres = dir.path().join("pres.json");
    let out = ulrich(&["gca", "presentation", path_str(&rep), "--out", path_str(&pres)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_str(&fs::read_to_string(&pres).unwrap()).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(v["nvars"], 3);
    let out = ulrich(&["pfaff", "det", path_str(&pres)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    // det(w I - x1 A1 - x2 A2) = w^2 - x1^2 - x2^2
    let text = stdout(&out);
    for term in ["x3^2", "x1^2", "x2^2"] {
        assert!(text.contains(term), "{text}");
    }
}

#[test]
fn pfaffian_of_a_four_by_four() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("m.json");
    let m = serde_json::json!({
        "nvars": 6,
        "size": 4,
        "entries": [
            ["0", "x1", "x2", "x3"],
            ["-x1", "0", "x4", "x5"],
            ["-x2", "-x4", "0", "x6"],
            ["-x3", "-x5", "-x6", "0"],
        ],
    });
    fs::write(&path, m.to_string()).unwrap();
    let out = ulrich(&["--format", "json", "pfaff", "pfaffian", path_str(&path)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let pf = v["pfaffian"].as_str().unwrap();
    for term in ["x1*x6", "x2*x5", "x3*x4"] {
        assert!(pf.contains(term), "{pf}");
    }

    let mut bad = m.clone();
    bad["entries"][1][0] = Value::String("x1".into());
    fs::write(&path, bad.to_string()).unwrap();
    assert_eq!(code(&ulrich(&["pfaff", "pfaffian", path_str(&path)])), 2);
}

#[test]
fn nondegeneracy_verdicts() {
    let fermat = ulrich(&["pfaff", "nondegenerate", "--poly", "x1^3 + x2^3 + x3^3"]);
    assert_eq!(code(&fermat), 0, "{}", stdout(&fermat));
    let nodal = ulrich(&["pfaff", "nondegenerate", "--poly", "x1^3 + x2^3"]);
    assert_eq!(code(&nodal), 1);
    assert!(stdout(&nodal).starts_with("degenerate"));
    let garbage = ulrich(&["pfaff", "nondegenerate", "--poly", "x1^^3"]);
    assert_eq!(code(&garbage), 2);
}

#[test]
fn lattice_search_certificate_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let out = ulrich(&["lattice", "search", "--preset", "prop-4.6", "--out", path_str(p)]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        assert!(stdout(&out).contains("131072 candidates, 0 solutions"));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(v["candidates_checked"], 131_072);
    assert_eq!(v["solutions"], Value::Array(vec![]));
}

#[test]
fn lattice_control_finds_hyperplane() {
    let out = ulrich(&["--format", "json", "lattice", "search", "--preset", "prop-4.6-control"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let sols = v["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0]["a"], 3);
    assert_eq!(sols[0]["b"], serde_json::json!([1, 1, 1, 1, 1, 1, 1]));
}

#[test]
fn lattice_pair_and_classes() {
    let h = "3,-1,-1,-1,-1,-1,-1,-1";
    let out = ulrich(&["lattice", "pair", "--lattice", "cliffk3", "--d1", h, "--d2", h]);
    assert_eq!(stdout(&out).trim(), "4");
    let out = ulrich(&["lattice", "pair", "--lattice", "delpezzo2", "--d1", h, "--d2", h]);
    assert_eq!(stdout(&out).trim(), "2");
    let out = ulrich(&["lattice", "pair", "--lattice", "cliffk3", "--d1", "1,2", "--d2", h]);
    assert_eq!(code(&out), 2);
    let out = ulrich(&["lattice", "classes", "--surface", "cliffk3"]);
    assert_eq!(stdout(&out).lines().count(), 56);
}

#[test]
fn numerology_replay() {
    let out = ulrich(&["replay", "numerology"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = ulrich(&["replay", "numerology", "--recorded-value", "1=20"]);
    assert_eq!(code(&out), 1);
    let out = ulrich(&["replay", "numerology", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v.as_array().map(Vec::len), Some(24));
    let out = ulrich(&["replay", "numerology", "--recorded-value", "one=20"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn acceptance_subset_with_fault() {
    let out = ulrich(&["acceptance", "--only", "1,8"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = ulrich(&["acceptance", "--only", "8", "--inject", "ledger-constant"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("criterion  8 FAIL"), "{}", stdout(&out));
}

#[test]
fn calculators() {
    let run = |args: &[&str]| {
        let mut full = vec!["calc"];
        full.extend_from_slice(args);
        let out = ulrich(&full);
        (code(&out), stdout(&out).trim().to_string())
    };
    assert_eq!(run(&["rho", "--g", "9", "--r", "1", "--d", "5"]), (0, "-1".into()));
    assert_eq!(run(&["genus", "--selfint", "16"]), (0, "9".into()));
    assert_eq!(run(&["chi", "--rank", "2", "--c1sq", "4", "--c2", "4"]).1, "2");
    assert_eq!(run(&["chi", "--rank", "2", "--c1sq", "3", "--c2", "4"]).0, 2);
    assert_eq!(run(&["rh", "--base-genus", "0", "--branch", "8"]), (0, "3".into()));
    assert_eq!(run(&["af-bound", "--g", "9", "--k", "8", "--d", "9"]).0, 1);
    assert_eq!(
        run(&["martens", "--g", "9", "--r", "2", "--d", "11", "--class", "hyperelliptic"]).0,
        1
    );
    assert_eq!(run(&["gonality", "--degree", "12", "--collinear", "4"]).0, 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&ulrich(&["gca", "verify", "--bogus"])), 2);
    assert_eq!(code(&ulrich(&[])), 2);
    assert_eq!(code(&ulrich(&["--help"])), 0);
}
