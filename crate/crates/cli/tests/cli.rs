use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_obstruction"));
    c.env_remove("OBSTRUCTION_DATA_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn shipped_data() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn find<'a>(v: &'a Value, name: &str) -> &'a Value {
    v["suites"]
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|s| s["checks"].as_array().unwrap())
        .find(|c| c["name"] == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
}

#[test]
fn oliver_at_three() {
    let out = run(&["oliver", "--p", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = find(&v, "order of the Oliver summand");
    assert_eq!((c["expected"].as_str(), c["computed"].as_str(), c["verdict"].as_str()), (Some("9"), Some("9"), Some("pass")));
}

#[test]
fn chern_single_t() {
    let out = run(&["chern", "--p", "5", "--t", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let c = find(&v, "ch(psi) mod p, t = 3");
    assert_eq!(c["verdict"], "pass");
    assert_eq!(c["computed"], c["expected"]);
    // only t = 3 was run
    let names: Vec<&str> = v["suites"][0]["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.iter().all(|n| !n.contains("t = 2")));
}

#[test]
fn construct3_reports_discrepancies_without_failing() {
    let out = run(&["construct3", "--epsilon", "1/8", "--points", "20"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["summary"]["failed"], 0);
    assert_eq!(v["summary"]["discrepancies"], 5);
    assert_eq!(v["config"]["epsilon"], "1/8");
}

#[test]
fn config_errors_exit_with_two() {
    for args in [
        vec!["oliver", "--p", "11"],
        vec!["oliver", "--p", "4"],
        vec!["chern", "--p", "3", "--t", "4"],
        vec!["construct3", "--epsilon", "2/7"],
        vec!["construct3", "--epsilon", "one eighth"],
        vec!["oliver", "-p", "3"],
        vec!["nonsense"],
        vec!["tables", "check"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# run settings\np = 5\nformat = text\n").unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let text = run(&["oliver", "--config", cfg_s]);
    assert_eq!(text.status.code(), Some(0));
    let shown = String::from_utf8(text.stdout).unwrap();
    assert!(shown.contains("p = 5"), "{shown}");
    assert!(shown.contains("[PASS] order of the Oliver summand"));

    let over = run(&["oliver", "--config", cfg_s, "--p", "7", "--format", "json"]);
    let v = json(&over);
    assert_eq!(v["config"]["p"], 7);
    assert_eq!(find(&v, "order of the Oliver summand")["computed"], "49");

    std::fs::write(&cfg, "prime = 5\n").unwrap();
    assert_eq!(run(&["oliver", "--config", cfg_s]).status.code(), Some(2));
    let missing = dir.path().join("absent.cfg");
    assert_eq!(run(&["oliver", "--config", missing.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gl2.json");
    let out = run(&["gl2", "--p", "3", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["suite"], "gl2");
}

fn without_timestamp(bytes: &[u8]) -> String {
    let mut v: Value = serde_json::from_slice(bytes).unwrap();
    v.as_object_mut().unwrap().remove("timestamp");
    serde_json::to_string_pretty(&v).unwrap()
}

#[test]
fn all_is_deterministic_and_summed() {
    let a = run(&["all", "--p", "3", "--points", "10"]);
    let b = run(&["all", "--p", "3", "--points", "10"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timestamp(&a.stdout), without_timestamp(&b.stdout));
    // the raw bytes differ at most inside the timestamp block
    let strip = |o: &Output| {
        let s = String::from_utf8(o.stdout.clone()).unwrap();
        s[..s.find("\"timestamp\"").unwrap()].to_string()
    };
    assert_eq!(strip(&a), strip(&b));

    let v = json(&a);
    let suites = v["suites"].as_array().unwrap();
    let ids: Vec<&str> = suites.iter().map(|s| s["suite"].as_str().unwrap()).collect();
    assert_eq!(ids, ["chern", "serre", "emspace", "steenrod", "oliver", "gl2", "construct3"]);
    for key in ["total", "passed", "failed", "discrepancies"] {
        let sum: u64 = suites.iter().map(|s| s["summary"][key].as_u64().unwrap()).sum();
        assert_eq!(v["summary"][key].as_u64().unwrap(), sum, "{key}");
    }
    let checks: usize = suites.iter().map(|s| s["checks"].as_array().unwrap().len()).sum();
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, checks);
}

#[test]
fn shipped_tables_match() {
    let out = run(&["tables", "check", "--dir", shipped_data().to_str().unwrap(), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json(&out)["summary"]["total"], 33);
}

#[test]
fn tampered_table_fails_checks_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let w = bin().args(["tables", "write", "--primes", "3"]).env("OBSTRUCTION_DATA_DIR", dir.path()).output().unwrap();
    assert_eq!(w.status.code(), Some(0));
    let ring = dir.path().join("bht_p3_z.table");
    let text = std::fs::read_to_string(&ring).unwrap();
    assert!(text.contains("4 | tau' * v' -> tau'*v'\n"));
    std::fs::write(&ring, text.replace("4 | tau' * v' -> tau'*v'\n", "4 | tau' * v' -> 2*tau'*v'\n")).unwrap();

    let check = run(&["tables", "check", "--dir", dir.path().to_str().unwrap(), "--primes", "3"]);
    assert_eq!(check.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&check.stdout).contains("[FAIL] bht_p3_z.table"));

    // suites read the tampered ring through the environment
    let chern = bin().args(["chern", "--p", "3"]).env("OBSTRUCTION_DATA_DIR", dir.path()).output().unwrap();
    assert_eq!(chern.status.code(), Some(1));
    let v = json(&chern);
    assert!(v["summary"]["failed"].as_u64().unwrap() > 0);
    let clean = run(&["chern", "--p", "3"]);
    assert_eq!(clean.status.code(), Some(0));
}
