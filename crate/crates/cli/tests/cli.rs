use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interval6"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn gen(dir: &TempDir, family: &str, extra: &[&str]) -> String {
    let out = p(dir, &format!("{family}.json"));
    let mut args = vec!["gen", "--family", family, "--out", &out];
    args.extend_from_slice(extra);
    let o = run(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn vertex_count(path: &str) -> u64 {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    v["x_count"].as_u64().unwrap() + v["y_count"].as_u64().unwrap()
}

#[test]
fn gen_subset6_has_35_vertices() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "subset6", &[]);
    assert_eq!(vertex_count(&g), 35);
}

#[test]
fn random_gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = run(&["gen", "--family", "random", "--k", "3", "--seed", "9", "--simple"]);
    let b = run(&["gen", "--family", "random", "--k", "3", "--seed", "9", "--simple"]);
    let c = run(&["gen", "--family", "random", "--k", "3", "--seed", "10", "--simple"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    let g = gen(&dir, "random", &["--k", "3", "--seed", "9"]);
    assert_eq!(vertex_count(&g), 21);
}

#[test]
fn via24_on_subset6_is_not_applicable() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "subset6", &[]);
    let o = run(&["factor", "--in", &g, "--method", "via24"]);
    assert_eq!(code(&o), 2);
    assert_eq!(json(&o)["status"], "unknown");
}

#[test]
fn search_finds_factor_on_subset6_and_writes_it() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "subset6", &[]);
    let f = p(&dir, "f.json");
    let o = run(&["factor", "--in", &g, "--out", &f]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "found");
    let v = run(&["verify", "--in", &g, "--factor", &f]);
    assert_eq!(code(&v), 0);
}

#[test]
fn claw_has_no_factor() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "claw-triple", &[]);
    for method in ["oracle", "search"] {
        let o = run(&["factor", "--in", &g, "--method", method]);
        assert_eq!(code(&o), 1, "{method}");
        let v = json(&o);
        assert_eq!(v["status"], "none");
        assert_eq!(v["definitive"], true);
    }
}

#[test]
fn k34_via_transversal() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "k34", &[]);
    let o = run(&["factor", "--in", &g, "--method", "transversal"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["status"], "found");
}

#[test]
fn p7_lengths_on_eight_triples() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "eight-triples", &[]);
    let o = run(&["factor", "--in", &g, "--lengths", "6", "--unbounded"]);
    assert_eq!(code(&o), 0);
    let lengths = json(&o)["lengths"].as_array().unwrap().clone();
    assert!(lengths.iter().all(|l| l == 6));
}

#[test]
fn color_subset6_with_bundled_factor() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "factor.json");
    let g = gen(&dir, "subset6", &["--factor-out", &f]);
    let c = p(&dir, "c.json");
    let dot = p(&dir, "g.dot");
    let o = run(&["color", "--in", &g, "--factor", &f, "--out", &c, "--dot", &dot]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let table = String::from_utf8_lossy(&o.stderr);
    assert_eq!(table.lines().filter(|l| l.starts_with('x') || l.starts_with('y')).count(), 35);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("graph"));
    assert!(text.contains("penwidth"));
    let v = run(&["verify", "--in", &g, "--factor", &f, "--coloring", &c]);
    assert_eq!(code(&v), 0);
    assert_eq!(json(&v)["coloring"]["ok"], true);
}

#[test]
fn two_switch_factor_verifies() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "factor.json");
    let g = gen(&dir, "two-switch", &["--factor-out", &f]);
    assert_eq!(vertex_count(&g), 28);
    assert_eq!(code(&run(&["verify", "--in", &g, "--factor", &f])), 0);
}

#[test]
fn invalid_factor_is_rejected() {
    let dir = TempDir::new().unwrap();
    let f = p(&dir, "factor.json");
    let g = gen(&dir, "subset6", &["--factor-out", &f]);
    let k = gen(&dir, "k34", &[]);
    // a subset6 factor is not a factor of K_{3,4}
    let o = run(&["color", "--in", &k, "--factor", &f]);
    assert_eq!(code(&o), 3);
    let v = run(&["verify", "--in", &g, "--factor", &p(&dir, "missing.json")]);
    assert_eq!(code(&v), 3);
}

#[test]
fn input_errors_exit_3() {
    let dir = TempDir::new().unwrap();
    let bad = p(&dir, "bad.json");
    std::fs::write(&bad, "{\"x_count\": 1, \"y_count\": 1, \"edges\": [[0, 5]]}").unwrap();
    assert_eq!(code(&run(&["factor", "--in", &bad])), 3);
    assert_eq!(code(&run(&["no-such-command"])), 3);
    assert_eq!(code(&run(&["factor", "--method", "psychic"])), 3);
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn export_writes_dot() {
    let dir = TempDir::new().unwrap();
    let g = gen(&dir, "k34", &[]);
    let o = run(&["export", "--in", &g]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.matches(" -- ").count(), 12);
}

#[test]
fn hunt_is_independent_of_job_count() {
    let dir = TempDir::new().unwrap();
    let archive = p(&dir, "archive");
    let args = |jobs: &'static str| {
        vec!["hunt", "--k", "3", "--trials", "24", "--seed", "5", "--jobs", jobs]
    };
    let one = run(&args("1"));
    let four = run(&args("4"));
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let mut with_archive = args("2");
    with_archive.extend(["--archive", &archive]);
    assert_eq!(run(&with_archive).stdout, one.stdout);
    assert!(Path::new(&archive).is_dir());
    assert_eq!(json(&one)["factor"], 24);
}

#[test]
fn no_mixed_instance_round_trips() {
    let o = run(&["gen", "--family", "no-mixed"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert!(!v["cycles"].as_array().unwrap().is_empty());
    assert!(!v["triples"].as_array().unwrap().is_empty());
}
