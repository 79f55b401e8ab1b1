use serde_json::Value;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_grr-census"));
    c.env_remove("GRR_CENSUS_BUDGET_C");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn group_info_reports_order_and_family() {
    let o = run(&["group-info", "Q8xC2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["order"], 16);
    assert_eq!(v["generalized_dicyclic"], true);
    assert_eq!(v["q8_times_ea_rank"], 1);

    let v = json(&run(&["group-info", "C6"]));
    assert_eq!((v["order"].as_u64(), v["excluded_family"].as_bool()), (Some(6), Some(true)));
}

#[test]
fn bad_specs_exit_2() {
    let o = run(&["group-info", "Dic(C2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("exponent"));
    let o = run(&["group-info", "C4y"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position"));
    assert_eq!(run(&["census"]).status.code(), Some(2));
    assert_eq!(run(&["verify-lemma", "nonsense"]).status.code(), Some(2));
}

#[test]
fn grr_check() {
    let v = json(&run(&["grr-check", "C3", "--set", "1,2"]));
    assert_eq!(v["grr"], false);
    assert_eq!(v["automorphism_group_order"], 6);
    // the same set in hex
    let v = json(&run(&["grr-check", "C3", "--set", "6"]));
    assert_eq!(v["set"], serde_json::json!([1, 2]));
    // {1} is not inverse-closed in C4
    assert_eq!(run(&["grr-check", "C4", "--set", "[1]"]).status.code(), Some(2));
}

#[test]
fn census_d3_json() {
    let o = run(&["census", "D3", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["seed"], 42);
    let rep = &v["reports"][0];
    assert_eq!(rep["normal_subgroup"], serde_json::json!([0, 1, 2]));
    assert_eq!(rep["counts"]["total_sets"], 32);
    assert_eq!(rep["counts"]["u_n"], 0);
    let main1 = rep["bounds"].as_array().unwrap().iter().find(|b| b["bound_id"] == "main1").unwrap();
    assert_eq!((main1["holds"].as_bool(), main1["vacuous"].as_bool()), (Some(true), Some(true)));
}

#[test]
fn census_output_is_deterministic() {
    let a = run(&["census", "C4xC2", "--jobs", "1"]);
    let b = run(&["census", "C4xC2", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn census_csv_and_checkpoint_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d4.csv");
    let ck = dir.path().join("d4.ckpt");
    let args = ["census", "D4", "--normal", "gens:1", "--format", "csv", "--out", out.to_str().unwrap(), "--checkpoint", ck.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    assert!(ck.exists());
    let first = std::fs::read_to_string(&out).unwrap();
    assert!(first.starts_with("seed,group,order,normal_subgroup"));
    assert_eq!(first.lines().count(), 1 + 12);
    // a finished checkpoint resumes to the same report
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), first);
}

#[test]
fn census_budgets() {
    let o = run(&["census", "C70"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
    let o = bin().args(["census", "D3"]).env("GRR_CENSUS_BUDGET_C", "4").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().args(["census", "D3"]).env("GRR_CENSUS_BUDGET_C", "5").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["census", "D3", "--jobs", "0"]).status.code(), Some(2));
    assert_eq!(run(&["census", "D3", "--normal", "gens:3"]).status.code(), Some(2));
}

#[test]
fn verify_lemma_icecream() {
    let o = run(&["verify-lemma", "icecream", "--max-order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("seed,lemma_id,group,parameters,outcome,count,bound,exceptional_clause"));
    assert!(lines.all(|l| l.starts_with("0,icecream,") && !l.contains("VIOLATION")));
}

#[test]
fn verify_lemma_psi_reports_the_cyclic_counterexample() {
    let o = run(&["verify-lemma", "psi", "--max-order", "12"]);
    assert_eq!(o.status.code(), Some(1));
    let text = String::from_utf8(o.stdout).unwrap();
    let bad: Vec<&str> = text.lines().filter(|l| l.contains("VIOLATION")).collect();
    assert_eq!(bad.len(), 4);
    assert!(bad.iter().all(|l| l.contains(",C12,")));
}

#[test]
fn seeded_sweeps_repeat() {
    let a = run(&["verify-lemma", "sigma", "--seed", "7", "--instances", "50"]);
    let b = run(&["verify-lemma", "sigma", "--seed", "7", "--instances", "50"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify-lemma", "sigma", "--seed", "8", "--instances", "50"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn density_report() {
    let v = json(&run(&["density-report", "--orders", "3..8"]));
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().all(|r| (0.0..=1.0).contains(&r["density"].as_f64().unwrap())));
    let c3 = rows.iter().find(|r| r["group"] == "C3").unwrap();
    assert_eq!(c3["grr_count"], 0);
    assert_eq!(run(&["density-report", "--orders", "8..3"]).status.code(), Some(2));
}
