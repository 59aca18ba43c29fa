use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("run hecke")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn info_reports_class_groups() {
    let o = hecke(&["info", "--named", "X5"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("h=4  Cl0 X = Z/4"), "{s}");
    assert!(s.contains("Cl0 X' = Z/4 x Z/4"), "{s}");
}

#[test]
fn info_accepts_explicit_coefficients() {
    let named = stdout(&hecke(&["info", "--named", "X5"]));
    let explicit = stdout(&hecke(&["info", "--p", "3", "--coeffs", "1,2"]));
    assert_eq!(named, explicit);
}

#[test]
fn verify_passes_on_corpus() {
    let o = hecke(&["verify", "--named", "X6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("components: 4"));
}

#[test]
fn graph_dot_export() {
    let o = hecke(&["graph", "--named", "X2", "--x", "inf", "--depth", "4", "--format", "dot"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("digraph"));
    let nodes = s.lines().filter(|l| l.trim_end().ends_with("\";") && !l.contains("->")).count();
    assert_eq!(nodes, 9, "{s}");
}

#[test]
fn graph_json_export_parses() {
    let o = hecke(&["graph", "--named", "X5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "hecke-graph/1");
    assert_eq!(v["q"], 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hecke(&["info", "--p", "4", "--coeffs", "1"]).status.code(), Some(2));
    assert_eq!(hecke(&["info", "--p", "3", "--coeffs", "0,0"]).status.code(), Some(2));
    assert_eq!(hecke(&["scan", "--q", "7"]).status.code(), Some(2));
    assert_eq!(hecke(&["toroidal", "--named", "X2", "--depth", "3"]).status.code(), Some(2));
    assert_eq!(hecke(&["bogus"]).status.code(), Some(2));
}

#[test]
fn dump_corpus_round_trips() {
    let s = stdout(&hecke(&["info", "--dump-corpus"]));
    let parsed = hecke_core::corpus::parse_corpus(&s).unwrap();
    assert_eq!(parsed, hecke_core::corpus::builtin_corpus());
}

#[test]
fn toroidal_and_zeta_succeed() {
    assert!(hecke(&["toroidal", "--named", "X5"]).status.success());
    assert!(hecke(&["zeta", "--named", "X4"]).status.success());
    assert!(hecke(&["cusp", "--named", "X3"]).status.success());
    assert!(hecke(&["pullback", "--named", "X2"]).status.success());
}

#[test]
fn random_scan_is_seeded() {
    let a = hecke(&["scan", "--q", "9", "--random", "5", "--seed", "3"]);
    let b = hecke(&["scan", "--q", "9", "--random", "5", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["curves"], 5);
    assert_eq!(v["failed"], 0);
}

#[test]
fn exhaustive_scan_is_byte_stable() {
    let a = hecke(&["scan", "--q", "3"]);
    let b = hecke(&["scan", "--q", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
