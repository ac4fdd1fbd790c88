use std::process::{Command, Output};

use afk::cli::DecomposeOutput;
use afk::criteria::CriteriaReport;
use afk::filtration::ChainStep;
use afk::natmod::{RelationReport, TablesJson};

fn afk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_afk")).args(args).env_remove("AFK_SEED").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn decompose_json() {
    let o = afk(&["decompose", "--family", "A", "--rank", "2", "--weight", "1,1,0", "--delta", "0", "--n", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let out: DecomposeOutput = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(out.summands.len(), 2);
    assert_eq!(out.chain.iter().filter(|s| s.strict).count(), 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["chain"][0]["collapse"][0], "Lambda_0");
    assert!(v["summands"][0]["weight"]["omega"].is_array());
}

#[test]
fn exit_codes() {
    let o = afk(&["decompose", "--family", "A", "--rank", "2", "--weight", "0,0,0", "--delta", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("multiple of delta"));
    assert_eq!(afk(&["decompose", "--family", "A", "--rank", "2", "--weight", "1;1;0"]).status.code(), Some(1));
    assert_eq!(afk(&["decompose", "--family", "A", "--rank", "2", "--weight", "1,-1,0"]).status.code(), Some(1));
    assert_eq!(afk(&["decompose", "--family", "B", "--rank", "2", "--weight", "1,0,0"]).status.code(), Some(1));
    assert_eq!(afk(&["chain", "--family", "A", "--rank", "2"]).status.code(), Some(1));
    assert_eq!(afk(&["--help"]).status.code(), Some(0));
}

#[test]
fn text_decomposition_has_one_row_per_summand() {
    let o = afk(&["decompose", "--family", "C", "--rank", "2", "--weight", "1,1,1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    let json: DecomposeOutput =
        serde_json::from_str(&stdout(&afk(&["decompose", "--family", "C", "--rank", "2", "--weight", "1,1,1"]))).unwrap();
    assert_eq!(rows.len(), json.summands.len());
}

#[test]
fn chain_and_criteria() {
    let o = afk(&["chain", "--family", "C", "--rank", "2", "--weight", "0,1,0"]);
    let steps: Vec<ChainStep> = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!steps[0].strict);
    let o = afk(&["criteria", "--family", "A", "--rank", "2", "--weight", "2,0,0"]);
    let r: CriteriaReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.reducible && !r.trivial);
    let o = afk(&["criteria", "--family", "A", "--rank", "2", "--weight", "0,1,0"]);
    assert!(stdout(&o).contains("\"undetermined\""));
}

#[test]
fn relations_and_negative_control() {
    let o = afk(&["verify-relations", "--family", "B", "--rank", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let r: RelationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.all_passed());
    let o = afk(&["verify-relations", "--family", "A", "--rank", "2", "--corrupt"]);
    assert_eq!(o.status.code(), Some(3));
    let r: RelationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(r.failed().any(|c| c.id == "EF(1,1)"));
    assert_eq!(afk(&["verify-relations", "--family", "A", "--rank", "2", "--lo", "0", "--hi", "1"]).status.code(), Some(1));
}

#[test]
fn tables_and_crystal() {
    let o = afk(&["tables", "--family", "B", "--rank", "3"]);
    let t: TablesJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.e[0].scalar.to_string(), "1");
    assert_eq!((t.e.len(), t.f.len()), (8, 8));
    let dot = stdout(&afk(&["crystal-graph", "--family", "A", "--rank", "3"]));
    assert!(dot.starts_with("digraph A3 {"));
    assert_eq!(dot.matches("->").count(), 4);
}

#[test]
fn selftest_seed_handling() {
    let run = |args: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_afk"));
        c.args(args).env_remove("AFK_SEED");
        if let Some(v) = env {
            c.env("AFK_SEED", v);
        }
        c.output().unwrap()
    };
    let a = run(&["selftest", "--seed", "7", "--samples", "20"], None);
    let b = run(&["selftest", "--seed", "99", "--samples", "20"], Some("7"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&a.stdout).starts_with("afk selftest seed=7 samples=20"));
    assert_eq!(run(&["selftest"], Some("abc")).status.code(), Some(1));
    let c = run(&["selftest", "--samples", "20", "--corrupt"], None);
    assert_eq!(c.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&c.stdout).contains("EF(1,1) failed"));
}
