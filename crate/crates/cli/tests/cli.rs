use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn bbasis(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_bbasis"))
        .args(args)
        .output()
        .unwrap();
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const EXAMPLE: &str = "ring n=2 field=Q\nx2^2 + x1*x2 + x1^2\nx1*x2^2\nx2^4\n";

#[test]
fn compute_univariate() {
    let dir = TempDir::new().unwrap();
    let sys = file(&dir, "s.txt", "ring n=1 field=Q\nx^2 - 1\n");
    let r = bbasis(&["compute", s(&sys), "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["d"], 2);
    assert_eq!(doc["orderIdeal"], serde_json::json!(["1", "x"]));
    assert_eq!(doc["generators"], serde_json::json!(["x^2 - 1"]));
    assert_eq!(doc["verification"]["passed"], true);
    assert!(doc["score"].is_null());
}

#[test]
fn compute_with_fixed_order_ideal() {
    let dir = TempDir::new().unwrap();
    let sys = file(&dir, "s.txt", EXAMPLE);
    let r = bbasis(&[
        "compute",
        s(&sys),
        "--order-ideal",
        "1,x1,x2,x1^2,x2^2,x2^3",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r
        .stdout
        .contains("order ideal: 1, x2, x1, x2^2, x1^2, x2^3"));
    assert!(r.stdout.contains("admissibility: pass"));
    let r = bbasis(&[
        "compute",
        s(&sys),
        "--order-ideal",
        "1,x1,x2,x1^2,x1*x2,x2^2",
    ]);
    assert_eq!(r.code, 4);
    assert!(r.stderr.contains("not admissible"));
    let r = bbasis(&["compute", s(&sys), "--order-ideal", "1,x1^2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn exit_codes_for_bad_input() {
    let dir = TempDir::new().unwrap();
    let line = file(&dir, "line.txt", "ring n=2 field=Q\nx1\n");
    assert_eq!(bbasis(&["compute", s(&line)]).code, 3);
    let garbage = file(&dir, "g.txt", "ring n=2 field=Q\nx1 +* x2\n");
    assert_eq!(bbasis(&["compute", s(&garbage)]).code, 2);
    let header = file(&dir, "h.txt", "x1 + x2\n");
    assert_eq!(bbasis(&["compute", s(&header)]).code, 2);
    assert_eq!(bbasis(&["compute", "/nonexistent/system"]).code, 2);
    let sys = file(&dir, "s.txt", EXAMPLE);
    assert_eq!(bbasis(&["compute", s(&sys), "--degree-cap", "2"]).code, 2);
    assert_eq!(bbasis(&["compute", s(&sys), "--field", "GF(4)"]).code, 2);
}

#[test]
fn field_flag_overrides_the_header() {
    let dir = TempDir::new().unwrap();
    let sys = file(&dir, "s.txt", "ring n=1 field=Q\nx^2 - 1\n");
    let r = bbasis(&["compute", s(&sys), "--field", "GF(7)"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("field: GF(7)"));
    assert!(r.stdout.contains("x^2 + 6"));
}

#[test]
fn enumerate_examples() {
    let dir = TempDir::new().unwrap();
    let sys = file(&dir, "s.txt", "ring n=2\nx1+x2, x2^2\n");
    let r = bbasis(&["enumerate", s(&sys)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("count: 2\n{1, x2}\n{1, x1}\n"));
    let uni = file(&dir, "u.txt", "ring n=1 field=Q\nx^2 - 1\n");
    assert!(bbasis(&["enumerate", s(&uni)]).stdout.contains("count: 1"));
    let mut f42 = String::from("ring n=4 field=Q\n");
    for f in border_basis::generate_f_nk(4, 2, border_basis::Field::Rational).unwrap() {
        f42.push_str(&format!("{f}\n"));
    }
    let f42 = file(&dir, "f42.txt", &f42);
    let r = bbasis(&["enumerate", s(&f42), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["count"], 6);
}

#[test]
fn optimize_examples() {
    let dir = TempDir::new().unwrap();
    let sys = file(&dir, "s.txt", "ring n=2\nx1+x2, x2^2\n");
    let pref = file(&dir, "p.txt", "x1 5\n");
    let r = bbasis(&["optimize", s(&sys), s(&pref)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("order ideal: 1, x1\n"));
    assert!(r.stdout.contains("score: 5\n"));
    let empty = file(&dir, "e.txt", "# nothing\n");
    let r = bbasis(&["optimize", s(&sys), s(&empty)]);
    assert!(r.stdout.contains("score: 0\n"));
    let dup = file(&dir, "d.txt", "x1 5\nx1 2\n");
    assert_eq!(bbasis(&["optimize", s(&sys), s(&dup)]).code, 2);
}

#[test]
fn clique_examples() {
    let dir = TempDir::new().unwrap();
    let tri = file(&dir, "t.txt", "3\n1 2\n2 3\n1 3\n");
    let path = file(&dir, "p.txt", "3\n1 2\n2 3\n");
    let k5 = file(
        &dir,
        "k5.txt",
        "5\n1 2\n1 3\n1 4\n1 5\n2 3\n2 4\n2 5\n3 4\n3 5\n4 5\n",
    );
    let r = bbasis(&["clique", s(&tri), "-k", "3"]);
    assert!(r.stdout.contains("clique: YES\nwitness: 1 2 3\nscore: 6\n"));
    let r = bbasis(&["clique", s(&path), "-k", "3"]);
    assert!(r.stdout.contains("clique: NO\n"));
    assert!(r.stdout.contains("score: 5\n"));
    let r = bbasis(&["clique", s(&k5), "-k", "4", "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["hasClique"], true);
    assert_eq!(doc["score"], 10);
    assert_eq!(bbasis(&["clique", s(&tri), "-k", "4"]).code, 2);
    let looped = file(&dir, "l.txt", "3\n1 1\n");
    assert_eq!(bbasis(&["clique", s(&looped), "-k", "2"]).code, 2);
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let sys = file(&dir, "s.txt", "ring n=1 field=Q\nx^2 - 1\n");
    let good = file(&dir, "g.txt", "order_ideal 1, x\nx^2 - 1\n");
    let wrong = file(&dir, "w.txt", "order_ideal 1, x\nx^2 - x\n");
    let scaled = file(&dir, "c.txt", "order_ideal 1, x\n2*x^2 - 2\n");
    let gap = file(&dir, "o.txt", "order_ideal 1, x^2\nx\n");
    let r = bbasis(&["verify", s(&sys), s(&good)]);
    assert_eq!(r.code, 0);
    let r = bbasis(&["verify", s(&sys), s(&wrong), "--json"]);
    assert_eq!(r.code, 1);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    assert_eq!(doc["membership"]["passed"], false);
    assert_eq!(doc["form"]["passed"], true);
    let r = bbasis(&["verify", s(&sys), s(&scaled)]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("form: fail"));
    assert!(bbasis(&["verify", s(&sys), s(&gap)])
        .stdout
        .contains("form: fail"));
}

#[test]
fn computed_bases_verify_and_reparse() {
    let dir = TempDir::new().unwrap();
    let sys = file(&dir, "s.txt", EXAMPLE);
    let r = bbasis(&["compute", s(&sys), "--json"]);
    let doc: serde_json::Value = serde_json::from_str(&r.stdout).unwrap();
    let o: Vec<&str> = doc["orderIdeal"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    let mut basis = format!("order_ideal {}\n", o.join(", "));
    for g in doc["generators"].as_array().unwrap() {
        basis.push_str(g.as_str().unwrap());
        basis.push('\n');
    }
    let basis = file(&dir, "b.txt", &basis);
    assert_eq!(bbasis(&["verify", s(&sys), s(&basis)]).code, 0);
}
