use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_prime-ineq"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn pairs_eval_prints_reduced_pair() {
    let o = run(&["pairs", "eval", "--word", "A^2B"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&o.stdout), "1/14 11/14\n");
    let o = run(&["pairs", "eval", "--word", "AB", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pair"]["kappa"], "1/6");
    assert_eq!(v["pair"]["lambda"], "2/3");
}

#[test]
fn pairs_search_small_depth() {
    let o = run(&["pairs", "search", "--depth", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["word"], "AB");
    assert_eq!(v["exhaustive"], true);
    assert_eq!(run(&["pairs", "search", "--depth", "3", "--objective", "chain"]).status.code(), Some(2));
}

#[test]
fn count_rs_example() {
    let o = run(&["count", "rs", "--Y", "2", "--c", "1.5", "--gamma", "0.1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["count"], 6);
    assert_eq!(v["ambiguous"], 0);
    assert_eq!(v["config"]["c"], 1.5);
    assert!(v.get("elapsed").is_none());
    let t = json(&run(&["count", "rs", "--Y", "2", "--c", "1.5", "--gamma", "0.1", "--timing"]));
    assert!(t["elapsed"].as_f64().unwrap() >= 0.0);
    let n = json(&run(&["count", "rs", "--Y", "6", "--c", "1.7", "--gamma", "0.5", "--naive"]));
    let f = json(&run(&["count", "rs", "--Y", "6", "--c", "1.7", "--gamma", "0.5"]));
    assert_eq!(n["count"], f["count"]);
}

#[test]
fn ledger_exit_codes_and_rationals() {
    let o = run(&["ledger", "all"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("26088036/12301745"));
    let v = json(&run(&["ledger", "typeii", "--format", "json"]));
    assert_eq!(v["pass"], true);
    for row in v["reports"][0]["rows"].as_array().unwrap() {
        for k in ["lhs", "rhs", "slack"] {
            assert!(row[k].as_str().unwrap().contains('/'), "{row}");
        }
    }
    assert_eq!(run(&["ledger", "nothing"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["count", "rs", "--Y", "2", "--c", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["count", "rs", "--Y", "1", "--c", "1.5", "--gamma", "1"]).status.code(), Some(2));
    let o = run(&["--eps=-1", "scan", "--N", "1e5", "--c", "1.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--eps"));
    assert_eq!(run(&["kernel", "eval", "--a", "0.1", "--b", "0.1", "--r", "2", "--x", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn failed_check_exits_one() {
    // An enormous window counts every tuple: slope 4 exceeds the allowance.
    let o = run(&["count", "ladder", "--c", "1.5", "--gamma", "1e9", "--Y", "4,8,16,32", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["out_of_regime"], true);
    assert_eq!(v["pass"], false);
}

#[test]
fn kernel_csv() {
    let o = run(&["kernel", "eval", "--a", "0.9", "--b", "0.1", "--r", "3", "--x", "-1,0,0.5"]);
    let s = String::from_utf8_lossy(&o.stdout);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "x,phi,Phi,bound");
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("0.0,1.0,1.8"));
    let c = run(&["kernel", "check", "--a", "0.9", "--b", "0.1", "--r", "4", "--samples", "500", "--seed", "2"]);
    assert_eq!(c.status.code(), Some(0));
}

#[test]
fn config_file_merges_under_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    fs::write(&cfg, "# shared settings\nc = 1.5\nseed = 11\n").unwrap();
    let p = cfg.to_str().unwrap();
    let v = json(&run(&["count", "rs", "--Y", "2", "--gamma", "0.1", "--config", p]));
    assert_eq!(v["count"], 6);
    assert_eq!(v["config"]["seed"], 11);
    let w = json(&run(&["count", "rs", "--Y", "2", "--gamma", "0.1", "--config", p, "--c", "1.0"]));
    assert_eq!(w["config"]["c"], 1.0);
    fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(run(&["count", "rs", "--Y", "2", "--gamma", "0.1", "--config", p]).status.code(), Some(2));
}

#[test]
fn output_directory_override() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin()
        .args(["pairs", "eval", "--word", "BA", "--out", "sub/pair.txt"])
        .env("PRIME_INEQ_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(dir.path().join("sub/pair.txt")).unwrap();
    assert_eq!(text, "1/2 1/2\n");
}

#[test]
fn identical_output_across_worker_counts() {
    let runs: Vec<Vec<u8>> = ["1", "4", "8"]
        .iter()
        .map(|w| {
            let o = run(&["scan", "--N", "2e4", "--c", "1.5", "--samples", "12", "--seed", "5", "--workers", w, "--format", "csv"]);
            assert_eq!(o.status.code(), Some(0));
            o.stdout
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    assert!(String::from_utf8_lossy(&runs[0]).starts_with("R,count\n"));
    // Same argv, pool size from the environment: the embedded config is
    // identical too.
    let triple = |threads: &str| {
        bin()
            .args(["solve", "triple", "--N", "2e4", "--c", "1.5", "--R", "3.1e4"])
            .env("RAYON_NUM_THREADS", threads)
            .output()
            .unwrap()
    };
    let a = triple("1");
    assert_eq!(a.stdout, triple("4").stdout);
    assert_eq!(a.stdout, triple("8").stdout);
    let v = json(&a);
    for k in ["R", "count", "weighted", "B1", "H", "records"] {
        assert!(v.get(k).is_some(), "{k}");
    }
}

#[test]
fn sextuple_integer_case_and_mainterm() {
    // With c = 1 the senary scale is X = 4.2, so the primes are {5, 7}.
    let v = json(&run(&["solve", "sextuple", "--N", "42", "--c", "1"]));
    assert_eq!(v["outcome"]["primes"], 2);
    assert_eq!(v["outcome"]["record"]["primes"], serde_json::json!([7, 7, 7, 7, 7, 7]));
    let m = run(&["mainterm", "--N", "1e5", "--c", "1.5", "--R", "1.7e5"]);
    assert_eq!(m.status.code(), Some(0));
    assert!(json(&m)["H"].as_f64().unwrap() > 0.0);
    assert_eq!(run(&["mainterm", "--N", "1e5", "--c", "1.5", "--k", "4"]).status.code(), Some(2));
}
