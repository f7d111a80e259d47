use std::process::{Command, Output};

use qcluster::seed::Seed;
use qcluster::suite::canonical_seeds;

fn qc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcluster")).args(args).env_remove("QCLUSTER_ORDER").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("qcluster-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

#[test]
fn bundled_seeds_are_the_canonical_ones() {
    for (kind, s) in canonical_seeds() {
        let name = format!("{}", kind).to_ascii_lowercase();
        let o = qc(&["seed", "mutate", "--seed", &name, "--k", "1", "--k", "1"]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        assert_eq!(Seed::from_json(stdout(&o).trim()).unwrap(), s);
    }
}

#[test]
fn seed_mutate() {
    let o = qc(&["seed", "mutate", "--file", "a2.json", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = Seed::from_json(stdout(&o).trim()).unwrap();
    assert_eq!(s, Seed::new(vec![vec![0, -1], vec![1, 0]], vec![1, 1]).unwrap());

    let bad = tmp("bad_d.json");
    std::fs::write(&bad, r#"{"n": 2, "epsilon": [[0, 2], [-1, 0]], "d": [1, 1]}"#).unwrap();
    let o = qc(&["seed", "mutate", "--file", bad.to_str().unwrap(), "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("skew-symmetrizability"), "{}", stderr(&o));

    let o = qc(&["seed", "mutate", "--file", "a2.json", "--k", "3"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qc(&["seed", "mutate", "--file", "/nonexistent/seed.json", "--k", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_operator_writes_a_certificate() {
    let out = tmp("a2_cert.json");
    let o = qc(&["verify", "--layer", "operator", "--relation", "A2", "--file", "a2.json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("constant = 1"));
    let cert: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["verdict"], "constant = 1");
    assert_eq!(cert["phase_exponents"], serde_json::json!({}));
    // the seed inside the certificate parses back to the input
    let s = Seed::from_json(&cert["seed"].to_string()).unwrap();
    assert_eq!(s, canonical_seeds()[2].1);
    assert!(!cert["trace"].as_array().unwrap().is_empty());
}

#[test]
fn verify_classical_and_quantum() {
    let o = qc(&["verify", "--layer", "classical", "--relation", "G2", "--file", "g2.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = qc(&["verify", "--layer", "quantum", "--relation", "B2", "--file", "b2.json", "--order", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.starts_with("layer,relation,seed,verdict,seconds\nquantum,"), "{text}");
}

#[test]
fn order_comes_from_the_environment_unless_given() {
    let out = tmp("order.json");
    let run = |extra: &[&str]| {
        let mut args = vec!["verify", "--layer", "quantum", "--relation", "A2", "--seed", "a2", "--out", out.to_str().unwrap()];
        args.extend_from_slice(extra);
        let o = Command::new(env!("CARGO_BIN_EXE_qcluster")).args(&args).env("QCLUSTER_ORDER", "2").output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
        v["report"]["order"].as_i64().unwrap()
    };
    assert_eq!(run(&[]), 2);
    assert_eq!(run(&["--order", "3"]), 3);
}

#[test]
fn inapplicable_relation_exits_3() {
    let o = qc(&["verify", "--layer", "operator", "--relation", "G2", "--file", "a2.json"]);
    assert_eq!(o.status.code(), Some(3));
    let o = qc(&["verify", "--layer", "classical", "--relation", "B2", "--seed", "b2", "--i", "2", "--j", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn dilog_commands() {
    let o = qc(&["dilog", "check", "--hbar", "0.7", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 6);

    let o = qc(&["dilog", "eval", "--hbar", "1.3", "--z", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let phase = -std::f64::consts::PI * (1.3 + 1.0 / 1.3) / 24.0;
    assert!((v["re"].as_f64().unwrap() - phase.cos()).abs() < 1e-12);
    assert!((v["im"].as_f64().unwrap() - phase.sin()).abs() < 1e-12);

    let o = qc(&["dilog", "check", "--hbar", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("small denominator"));

    let o = qc(&["dilog", "check", "--hbar", "0.7", "--tol", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = qc(&["dilog", "eval", "--hbar", "1", "--z", "-6.283185307179586i"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_all_subset() {
    let o = qc(&["verify-all", "--criteria", "2,7", "--jobs", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[1].starts_with("2,") && rows[2].starts_with("7,"));
    assert!(stderr(&o).contains("[PASS] 7"));
    let o = qc(&["verify-all", "--criteria", "9"]);
    assert_eq!(o.status.code(), Some(2));
}
