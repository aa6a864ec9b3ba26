use std::path::Path;
use std::process::{Command, Output};

use bentforge::report::ClassReport;
use serde_json::Value;

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/fixtures");

fn bentforge(args: &[&str]) -> Output {
    bentforge_env(args, None)
}

fn bentforge_env(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bentforge"));
    cmd.args(args).env_remove("BENTFORGE_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("BENTFORGE_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixture(name: &str) -> String {
    format!("{FIXTURES}/{name}")
}

#[test]
fn analyze_json_round_trips() {
    let o = bentforge(&["analyze", "--anf", "x1*x2 + x3*x4", "--sharp", "--json"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let report = ClassReport::from_json(&text).unwrap();
    assert!(report.is_bent);
    assert_eq!(report.degree, 2);
    assert!(report.mm_sharp.is_some());
    assert!(report.ps_sharp.is_some());
    assert_eq!(report.to_json(), text.trim_end());
}

#[test]
fn analyze_reports_parse_position() {
    let o = bentforge(&["analyze", "--anf", "x1 * (x2 + "]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte"));
}

#[test]
fn analyze_reads_truth_table_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.tt");
    std::fs::write(&path, "tt:n=4:8887\n").unwrap();
    let o = bentforge(&["analyze", "--tt", path.to_str().unwrap(), "--json"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report = ClassReport::from_json(&stdout(&o)).unwrap();
    assert_eq!(report.n, 4);
    assert!(report.is_bent);
}

#[test]
fn sharp_needs_bent_input() {
    let o = bentforge(&["analyze", "--anf", "x1 x2 x3", "--n", "4", "--sharp"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not bent"));
}

#[test]
fn msub_and_profile() {
    let o = bentforge(&[
        "msub",
        "--anf",
        "x1 x2 + x3 x4 + x5 x6",
        "--dim",
        "3",
        "--json",
    ]);
    let list: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(list.len(), 135);
    let o = bentforge(&["profile", "--anf", "x1 x2 + x3 x4 + x5 x6"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"]["3"], 135);
}

#[test]
fn psclass_sweep_is_cached() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["psclass", "--anf", "x1 x3 + x2 x4", "--sharp", "--json"];
    let first: Value =
        serde_json::from_slice(&bentforge_env(&args, Some(dir.path())).stdout).unwrap();
    assert_eq!(first["from_cache"], false);
    assert!(first["partial_spread"].is_object());
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let second: Value =
        serde_json::from_slice(&bentforge_env(&args, Some(dir.path())).stdout).unwrap();
    assert_eq!(second["from_cache"], true);
    assert_eq!(first["ps_sharp"], second["ps_sharp"]);
}

#[test]
fn resume_rejects_other_function() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("sweep.json");
    let c = ckpt.to_str().unwrap();
    let o = bentforge(&[
        "psclass",
        "--anf",
        "x1 x3 + x2 x4",
        "--sharp",
        "--resume",
        c,
    ]);
    assert!(o.status.success());
    let o = bentforge(&[
        "psclass",
        "--anf",
        "x1 x2 + x3 x4",
        "--sharp",
        "--resume",
        c,
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("different function"));
}

#[test]
fn construct_and_perm_check() {
    let pi = fixture("apn_perm_3.vf");
    let o = bentforge(&["construct", "mm", "--pi", &pi, "--h", "x1 x2 x3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["function"]["is_bent"], true);
    assert_eq!(v["function"]["n"], 6);

    let o = bentforge(&["perm-check", "p1", "--pi", &pi, "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["p1"], true);

    let o = bentforge(&[
        "perm-check",
        "p1",
        "--pi",
        &fixture("p2_plane_perm_5.vf"),
        "--json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["p1"], false);

    let o = bentforge(&["perm-check", "apn", "--pi", "power:3@gf2m:m=3", "--json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["apn"], true);

    let o = bentforge(&[
        "construct",
        "extend-perm",
        "--s1",
        "vf:m=3:0,1,2,3,4,5,6,7",
        "--s2",
        "power:3@gf2m:m=3",
        "--json",
    ]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["p1"], true);
}

#[test]
fn thm55_certificate() {
    let o = bentforge(&[
        "construct",
        "thm55",
        "--pi",
        &fixture("apn_perm_3.vf"),
        "--sigma",
        &fixture("apn_perm_3_alt.vf"),
        "--h1",
        "x1 x2",
        "--json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["function"]["is_bent"], true);
    assert_eq!(v["certificate"]["verdict"], "outside_mm_sharp");
}

#[test]
fn verify_paper_selected_checks_pass() {
    let o = bentforge(&["verify-paper", "--fast", "--only", "3,5,6"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("PASS")).count(),
        3,
        "{out}"
    );
}

#[test]
fn verify_paper_exit_code_follows_failures() {
    let o = bentforge(&["verify-paper", "--fast", "--json"]);
    let v: Vec<Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 12);
    let fails = v.iter().filter(|c| c["status"] == "fail").count();
    assert_eq!(fails, 1);
    assert_eq!(v[0]["status"], "fail");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tampered_fixture_fails() {
    let dir = tempfile::tempdir().unwrap();
    // a linear coordinate rules out APN
    let text = std::fs::read_to_string(fixture("apn_perm_3.vf")).unwrap();
    let tampered = text.replace("x1 x2 + x3\n", "x3\n");
    assert_ne!(text, tampered);
    std::fs::write(dir.path().join("apn_perm_3.vf"), tampered).unwrap();
    let o = bentforge(&[
        "verify-paper",
        "--fast",
        "--only",
        "5",
        "--fixtures",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL [ 5]"), "{}", stdout(&o));

    let clean = bentforge(&["verify-paper", "--fast", "--only", "5"]);
    assert!(clean.status.success());
}
