use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_expodom"))
        .args(args)
        .env_remove("EXPODOM_JOBS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn binary");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn run_json(args: &[&str], stdin: &str) -> Value {
    let out = run(args, stdin);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn ratio(num: &str, den: &str) -> Value {
    json!({"num": num, "den": den})
}

#[test]
fn compute_star_from_edge_list() {
    let v = run_json(&["compute", "-"], "0 1\n0 2\n0 3\n");
    assert_eq!(v["n"], 4);
    assert_eq!(v["gamma_e"], 1);
    assert_eq!(v["gamma_e_witness"], json!([0]));
    assert_eq!(v["gamma_ef_star"], ratio("1", "1"));
    assert_eq!(v["witnesses_verified"], true);
    assert_eq!(v["lp_certified"], true);
}

#[test]
fn compute_path_from_graph6() {
    let p10 = expodom::graph::emit_graph6(&expodom::graph::Graph::path(10));
    let v = run_json(&["compute", "--no-ilp", "-"], &format!("{p10}\n"));
    assert_eq!(v["gamma_ef_star"], ratio("2", "1"));
    assert!(v.get("gamma").is_none());
    let forced = run_json(&["compute", "--format", "graph6", "--no-lp", "-"], &p10);
    assert_eq!(forced["gamma"], 4);
    assert!(forced.get("gamma_ef_star").is_none());
}

#[test]
fn compute_fixture_f2() {
    let v = run_json(&["compute", "--fixture", "f2"], "");
    assert_eq!(v["n"], 22);
    assert_eq!(v["gamma_e"], 6);
    assert_eq!(v["gamma_e_star"], 4);
    assert_eq!(v["gamma_ef_star"], ratio("4", "1"));
}

#[test]
fn order_guard() {
    let big: String = (0..27).map(|i| format!("{i} {}\n", i + 1)).collect();
    let out = run(&["compute", "-"], &big);
    assert_eq!(out.status.code(), Some(64));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
    let v = run_json(&["compute", "--no-ilp", "-"], &big);
    assert_eq!(v["n"], 28);
}

#[test]
fn parse_errors_exit_65() {
    let out = run(&["compute", "-"], "0 0\n");
    assert_eq!(out.status.code(), Some(65));
    let out = run(&["compute", "--format", "graph6", "-"], "~~\n");
    assert_eq!(out.status.code(), Some(65));
    let out = run(&["compute", "/nonexistent/graph.txt"], "");
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["verify", "--suite", "theorem9"], "").status.code(), Some(64));
    assert_eq!(run(&["compute", "--bogus", "-"], "").status.code(), Some(64));
    assert_eq!(run(&["conjecture", "--id", "3"], "").status.code(), Some(64));
    assert_eq!(run(&[], "").status.code(), Some(64));
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn verify_suites() {
    let v = run_json(&["verify", "--suite", "theorem2", "--nmax", "10"], "");
    assert_eq!(v["suite"], "theorem2");
    assert_eq!(v["violations"], json!([]));
    assert_eq!(v["checked"], 1 + 1 + 1 + 2 + 2 + 4 + 6 + 11 + 18 + 37);
    let v = run_json(&["verify", "--suite", "chain", "--nmax", "8", "--jobs", "1"], "");
    assert_eq!(v["violations"], json!([]));
    assert_eq!(v["params"]["cycle_max"], 8);
}

#[test]
fn conjecture_scan() {
    let v = run_json(&["conjecture", "--id", "1", "--nmax", "10"], "");
    assert_eq!(v["suite"], "conjecture1");
    assert_eq!(v["violations"], json!([]));
}

#[test]
fn deterministic_reports() {
    let args = ["verify", "--suite", "theorem4", "--nmax", "7", "--deterministic"];
    let a = run(&args, "");
    let b = run(&args, "");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["ms"], 0);
}

#[test]
fn report_to_file() {
    let dir = std::env::temp_dir().join(format!("expodom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = run(
        &["verify", "--suite", "enumcount", "--nmax", "7", "--out", path.to_str().unwrap()],
        "",
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["checked"], 7);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn enumerate_and_fixtures() {
    let v = run_json(&["enumerate", "--n", "8"], "");
    assert_eq!(v["count"], 11);
    assert_eq!(v["graph6"].as_array().unwrap().len(), 11);
    assert_eq!(run_json(&["enumerate", "--n", "10", "--count"], "")["count"], 37);
    let f1 = run_json(&["fixture", "f1", "--k", "2"], "");
    assert_eq!(f1["n"], 10);
    assert_eq!(f1["edges"].as_array().unwrap().len(), 9);
    assert_eq!(run_json(&["fixture", "f2"], "")["n"], 22);
}

#[test]
fn tau_and_family() {
    let v = run_json(&["tau", "--vertex", "0", "-"], "0 1\n1 2\n");
    assert_eq!(v["tau"], ratio("4", "1"));
    assert_eq!(v["witness"], json!([]));
    let fam = run_json(&["family", "--nmax", "4"], "");
    let star = expodom::graph::emit_graph6(&expodom::graph::canonical_form(&expodom::graph::Graph::star(3)).unwrap().graph);
    assert!(fam["graph6"].as_array().unwrap().contains(&json!(star)));
    let r = run_json(&["family", "--recognize", "-"], "0 1\n0 2\n0 3\n");
    assert_eq!(r["member"], true);
    assert_eq!(r["trace"].as_array().unwrap().len(), 3);
    let r = run_json(&["family", "--recognize", "-"], "0 1\n1 2\n2 3\n3 4\n");
    // γ(P_5) = 2 and γ_e(P_5) = 2
    assert_eq!(r["member"], true);
}
