use std::path::Path;
use std::process::{Command, Output};

fn edlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edlab")).args(args).env_remove("EDLAB_CONFIG").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find(|l| l.starts_with(key)).unwrap_or_else(|| panic!("no '{key}' line in\n{text}"))
}

#[test]
fn info_examples() {
    let q = stdout(&edlab(&["info", "Q(2)"]));
    assert_eq!(line(&q, "order"), "order 8");
    assert_eq!(line(&q, "M(G)"), "M(G) 1 order 1");
    assert!(line(&q, "Z^∧(G)").starts_with("Z^∧(G) order 2 "));
    let c = stdout(&edlab(&["info", "C(12)"]));
    assert_eq!(line(&c, "M(G)"), "M(G) 1 order 1");
    assert_eq!(line(&c, "Z^∧(G)"), "Z^∧(G) order 12 whole");
    let d = stdout(&edlab(&["info", "D(4)"]));
    assert_eq!(line(&d, "M(G)"), "M(G) Z/2 order 2");
    assert_eq!(line(&d, "Z^∧(G)"), "Z^∧(G) order 1 trivial");
    assert_eq!(line(&d, "|G∧G|"), "|G∧G| 4");
}

#[test]
fn degree_examples() {
    let o = edlab(&["degree", "--m", "1", "D(4)"]);
    let text = stdout(&o);
    for method in ["cover", "fp", "closed-form"] {
        assert_eq!(line(&text, method), format!("{method} 7/16"));
    }
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&edlab(&["degree", "--m", "2", "--method", "closed-form", "Q(2)"]));
    assert_eq!(line(&text, "closed-form"), "closed-form 1/1");
    for m in ["1", "2", "5"] {
        let text = stdout(&edlab(&["degree", "--m", m, "C(6)"]));
        assert_eq!(line(&text, "cover"), "cover 1/1");
        assert_eq!(line(&text, "fp"), "fp 1/1");
    }
}

#[test]
fn degree_disagreement_is_a_finding() {
    // in C4, a ∧ a^2 is trivial in G ∧ G but not in C4 ∧ <a^2>
    let o = edlab(&["degree", "--m", "1", "--H", "whole", "--K", "gen:[2]", "C(4)"]);
    let text = stdout(&o);
    assert_eq!(line(&text, "cover"), "cover 1/1");
    assert_eq!(line(&text, "fp"), "fp 3/4");
    assert_eq!(o.status.code(), Some(3));
}

fn sweep_file(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let mut full = vec!["sweep"];
    full.extend_from_slice(args);
    full.extend(["--out", path.to_str().unwrap()]);
    let o = edlab(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn sweep_is_deterministic_and_matches_closed_forms() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["--family", "dihedral", "--n", "2..6", "--m", "1..4"];
    let a = sweep_file(dir.path(), "a.csv", &args);
    let b = sweep_file(dir.path(), "b.csv", &args);
    assert_eq!(a, b);
    let mut rdr = csv::Reader::from_reader(a.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| &r[6] == &r[7] && &r[8] == "true"));

    let q = sweep_file(dir.path(), "q.json", &["--family", "quaternion", "--n", "2..4", "--m", "1..4", "--format", "json"]);
    let rows: serde_json::Value = serde_json::from_str(&q).unwrap();
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["closed_form_match"] == true));

    let c = sweep_file(dir.path(), "c.csv", &["--family", "cyclic", "--n", "2..8", "--m", "1..3"]);
    let mut rdr = csv::Reader::from_reader(c.as_bytes());
    assert!(rdr.records().map(Result::unwrap).all(|r| &r[5] == "1/1" && &r[6] == "1/1"));
}

#[test]
fn verify_exit_codes() {
    let pass = edlab(&["verify", "--suite", "closed-form-dihedral"]);
    assert_eq!(pass.status.code(), Some(0));
    let findings = edlab(&["verify", "--suite", "dwedge-vs-d"]);
    assert_eq!(findings.status.code(), Some(3));
    assert!(stdout(&findings).contains("FINDING dwedge-vs-d [D_8] checked=0 d=5/8 d^∧=7/16"));
    let t1 = edlab(&["verify", "--suite", "theorem-t1", "--max-order", "8", "--max-m", "3"]);
    assert_eq!(t1.status.code(), Some(0));
    assert!(stdout(&t1).ends_with("0 fail\n"));
}

#[test]
fn oracle_compare_examples() {
    for spec in ["D(4)", "C(2) x C(2)", "Q(2)"] {
        let o = edlab(&["oracle-compare", spec]);
        assert_eq!(o.status.code(), Some(0), "{spec}: {}", stdout(&o));
    }
    let klein = stdout(&edlab(&["oracle-compare", "C(2) x C(2)"]));
    assert!(klein.contains("G∧G=2") && klein.contains("|G∧G| via cover=2"));
    let q = stdout(&edlab(&["oracle-compare", "Q(2)"]));
    assert!(q.contains("M(G)=1") && q.contains("ker-kappa=1"));
}

#[test]
fn errors_and_help() {
    let bad = edlab(&["info", "E(3)"]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position 0"));
    assert_eq!(edlab(&["frobnicate"]).status.code(), Some(1));
    let help = edlab(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("D(n)        dihedral group D_2n: the argument is n, the ORDER IS 2n"));
}

#[test]
fn config_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("caps.json");
    std::fs::write(&path, r#"{"caps": {"cayley": 10}}"#).unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_edlab"))
        .args(["info", "C(12)"])
        .env("EDLAB_CONFIG", &path)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exceeds cap"));
}
