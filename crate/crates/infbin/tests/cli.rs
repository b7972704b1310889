use std::process::Command;

use infbin::cli::{run, EXIT_CAP, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_VERIFY};
use serde_json::Value;

fn infbin(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["infbin"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = infbin(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn apply_examples() {
    assert_eq!(infbin(&["apply", "[1,2,2]", "2"]), (EXIT_OK, "[2,2,1]\n".into(), String::new()));
    assert_eq!(infbin(&["apply", "[3]", "1^2"]).1, "[1,1,1]\n");
    assert_eq!(infbin(&["apply", "base:2:[2,1]", "5"]).1, "base:2:[3,1]\n");
    let (code, _, err) = infbin(&["apply", "[2,1]", "7"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert!(err.contains("move of type 7"));
    assert_eq!(infbin(&["apply", "[2,0]", "1"]).0, EXIT_DOMAIN);
    assert_eq!(infbin(&["apply", "[2,x]", "1"]).0, EXIT_USAGE);
    assert_eq!(infbin(&["apply", "[2,1]", "3^"]).0, EXIT_USAGE);
}

#[test]
fn construct_examples() {
    let v = json(&["construct", "-k", "2", "-l", "5", "-N", "5"]);
    assert_eq!(v["length"], 13);
    assert_eq!(v["target"], "[2,2,1]");
    assert_eq!(v["word"], "2^6 5^4 2^3");
    assert_eq!(json(&["construct", "-k", "1", "-l", "2", "-N", "4"])["word"], "1^4");
    assert_eq!(json(&["construct", "-k", "2", "-l", "5", "-N", "100"])["bound"], 200);
    assert_eq!(infbin(&["construct", "-k", "5", "-l", "3", "-N", "1"]).0, EXIT_USAGE);
    assert_eq!(infbin(&["construct", "-k", "2", "-l", "5"]).0, EXIT_USAGE);
}

#[test]
fn verify_examples() {
    let v = json(&["verify", "-k", "2", "-l", "5"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["universeSize"], 16);
    assert_eq!(v["N"], 5);
    let v = json(&["verify", "-k", "3", "-l", "7", "-N", "9"]);
    assert_eq!(v["passed"], true);
    assert_eq!(infbin(&["verify", "-k", "2", "-l", "30"]).0, EXIT_CAP);
    let (code, out, _) = infbin(&["verify", "-k", "5", "-l", "10"]);
    assert_eq!(code, EXIT_VERIFY);
    let v: Value = serde_json::from_str(&out).unwrap();
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "kcycle");
    assert_eq!(failed[0]["counterexample"], "[6,1,1,1,1]");
}

#[test]
fn lemma_sweep_streams_one_line_per_pair() {
    let (code, out, _) = infbin(&["lemmas", "--sweep-l-max", "10"]);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 36);
    let failing: Vec<(u64, u64)> = lines
        .iter()
        .filter(|v| v["passed"] == false)
        .map(|v| (v["k"].as_u64().unwrap(), v["l"].as_u64().unwrap()))
        .collect();
    assert_eq!(failing, vec![(5, 10)]);
    assert_eq!(code, EXIT_VERIFY);
    assert_eq!(infbin(&["lemmas", "-k", "2", "-l", "5"]).0, EXIT_OK);
    assert_eq!(infbin(&["lemmas", "-k", "2"]).0, EXIT_USAGE);
}

#[test]
fn sync_examples() {
    let v = json(&["sync", "-l", "3", "-a", "1", "--exact"]);
    assert_eq!(v["length"], 2);
    assert_eq!(v["optimal"], true);
    assert_eq!(v["terminal"], "[1,1,1]");
    let v = json(&["sync", "-l", "5", "-a", "2,5", "--greedy", "-d", "unif:2,5"]);
    assert_eq!(v["optimal"], false);
    assert_eq!(v["method"], "greedy");
    assert!(v["probabilityLengthRatio"].as_f64().unwrap() > 0.0);
    let word = v["word"].as_str().unwrap();
    for start in ["[5]", "[1,1,1,1,1]", "[2,3]", "[1,2,1,1]"] {
        let terminal = format!("{}\n", v["terminal"].as_str().unwrap());
        assert_eq!(infbin(&["apply", start, word]).1, terminal);
    }
    let (code, _, err) = infbin(&["sync", "-l", "6", "-a", "2,6", "--exact", "--budget", "3"]);
    assert_eq!(code, EXIT_CAP);
    assert!(err.contains("--greedy"));
    assert_eq!(json(&["sync", "-l", "4", "-k", "2"])["alphabet"], serde_json::json!([2, 4]));
    assert_eq!(infbin(&["sync", "-l", "4", "-a", "4"]).0, EXIT_DOMAIN);
    assert_eq!(infbin(&["sync", "-l", "3", "-a", "1", "--exact", "--greedy"]).0, EXIT_USAGE);
}

#[test]
fn simulate_examples() {
    let v = json(&["simulate", "-d", "det:1", "-n", "1000", "-s", "42"]);
    assert_eq!(v["frontSpeedEstimate"], 1.0);
    let v = json(&["simulate", "-d", "unif:2,5", "-n", "1000000", "-s", "7", "--watch", "2,5"]);
    let times = v["regenerationTimes"].as_array().unwrap();
    assert!(!times.is_empty());
    assert_eq!(v["regenerationMismatches"], 0);
    assert!(times.windows(2).all(|w| w[0].as_u64() < w[1].as_u64()));
    let v = json(&["simulate", "-d", "unif:2,5", "--two-chain", "base:1", "base:3", "-n", "100000", "-s", "9"]);
    assert!(v["agreementTime"].is_u64());
    assert_eq!(v["agreementPersisted"], true);
    let v = json(&["simulate", "-d", "det:3", "-n", "12000", "--depth", "3"]);
    assert_eq!(v["detectedPeriod"], 3);
    assert_eq!(infbin(&["simulate", "-d", "unif:1", "-n", "10", "--stationary", "base:1"]).0, EXIT_DOMAIN);
    assert_eq!(infbin(&["simulate", "-d", "cat:2@0.5,5@0.6", "-n", "10"]).0, EXIT_DOMAIN);
    assert_eq!(infbin(&["simulate", "-d", "bogus", "-n", "10"]).0, EXIT_USAGE);
}

#[test]
fn couple2_matches_simulate_two_chain() {
    let a = json(&["couple2", "base:1", "base:3", "-d", "unif:2,5", "-n", "5000", "-s", "2", "--watch", "2,5"]);
    let b = json(&[
        "simulate", "-d", "unif:2,5", "--two-chain", "base:1", "base:3", "-n", "5000", "-s", "2", "--watch", "2,5",
    ]);
    assert_eq!(a, b);
    assert_eq!(a["watchWord"], "2^6 5^4 2^3");
}

#[test]
fn csv_series() {
    let (code, out, _) = infbin(&["simulate", "-d", "det:1", "-n", "6", "--format", "csv", "--csv-every", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "step,binsCreated,topBinVector\n2,2,\"[1,1]\"\n4,4,\"[1,1]\"\n6,6,\"[1,1]\"\n");
    assert_eq!(infbin(&["construct", "-k", "2", "-l", "5", "-N", "5", "--format", "csv"]).0, EXIT_USAGE);
}

#[test]
fn binary_exit_codes_and_threads() {
    let bin = env!("CARGO_BIN_EXE_infbin");
    let out = Command::new(bin).args(["apply", "[2,1]", "7"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
    let out = Command::new(bin).arg("nonsense").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let run = |threads: &str| {
        Command::new(bin)
            .args(["--threads", threads, "simulate", "-d", "unif:2,5", "--two-chain", "base:1", "base:2"])
            .args(["-n", "3000", "-s", "5", "--replicas", "16"])
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run("1"), run("3"));
}
