//! End-to-end runs of the `gcn` binary.

use std::process::{Command, Output};

use serde_json::Value;

fn gcn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gcn"))
        .args(args)
        .env("GCN_THREADS", "2")
        .output()
        .expect("gcn runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON report")
}

#[test]
fn axioms_pass_for_gc1() {
    let o = gcn(&["axioms", "--N", "1", "--level", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("result: PASS\n"));
}

#[test]
fn extended_axioms_pass_for_gc2() {
    let o = gcn(&["axioms", "--N", "2", "--level", "2", "--extended", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["passed"], true);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"bracket central"));
}

#[test]
fn corrupted_constants_fail_with_a_listing() {
    let o = gcn(&["axioms", "--N", "1", "--level", "2", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("[FAIL] bracket jacobi"));
    assert!(out.contains("note: jacobi on J[0,1,1]"));
}

#[test]
fn reduced_cohomology_table() {
    let o = gcn(&["cohomology", "--N", "1", "--q", "0..2", "--level", "3", "--reduced", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    let dims: Vec<u64> = r["cohomology"].as_array().unwrap().iter().map(|row| row["dim_H"].as_u64().unwrap()).collect();
    assert_eq!(dims, [1, 0, 1]);
    for row in r["cohomology"].as_array().unwrap() {
        for key in ["q", "N", "L", "margin", "module", "reduced", "dim_kernel", "dim_image", "dim_H", "stabilized"] {
            assert!(row.get(key).is_some(), "{key}");
        }
    }
}

#[test]
fn natural_module_cohomology_vanishes() {
    let o = gcn(&["cohomology", "--N", "1", "--module", "natural:1:0", "--q", "0..2", "--level", "2", "--reduced"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let dims: Vec<&str> = out.lines().skip(2).take(3).map(|l| l.split_whitespace().nth(3).unwrap()).collect();
    assert_eq!(dims, ["0", "0", "0"]);
}

#[test]
fn psi_prime_is_a_nontrivial_cocycle() {
    let o = gcn(&["verify", "--builtin", "psi-prime", "--N", "2", "--level", "2", "--reduced", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = json(&o);
    assert_eq!(r["checks"][0]["name"], "cocycle");
    assert_eq!(r["checks"][0]["passed"], true);
    assert_eq!(r["checks"][1]["name"], "infeasibility certificate");
    assert_eq!(r["checks"][1]["passed"], true);
}

#[test]
fn gamma_bar_report_is_consistent() {
    let o = gcn(&["verify", "--builtin", "gamma-bar", "--level", "3", "--format", "json"]);
    let r = json(&o);
    let cocycle = r["checks"][0]["passed"].as_bool().unwrap();
    assert_eq!(r["checks"][1]["name"], "infeasibility certificate");
    assert_eq!(r["checks"][1]["passed"], true);
    // exit status follows the checks
    assert_eq!(o.status.code(), Some(if cocycle { 0 } else { 1 }));
}

#[test]
fn coboundary_from_file_has_a_primitive() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d-of-random.cochain");
    let p = path.to_str().unwrap();
    let o = gcn(&["sample", "--q", "1", "--level", "2", "--seed", "4", "--coboundary", "--output", p]);
    assert_eq!(o.status.code(), Some(0));
    let o = gcn(&["verify", "--file", p]);
    let out = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{out}");
    assert!(out.contains("[PASS] cocycle"));
    assert!(out.contains("[PASS] primitive"));
    assert!(out.contains("class: coboundary"));
}

#[test]
fn parse_errors_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.cochain");
    std::fs::write(&path, "2 1 trivial 1\nJ[0,1,1] J[1,1,1] : l1 + * l2\n").unwrap();
    let o = gcn(&["verify", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2, column"), "{err}");
}

#[test]
fn same_seed_gives_identical_reports() {
    let args = ["properties", "--seed", "5", "--level", "2", "--format", "json"];
    let a = gcn(&args);
    let b = gcn(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["config"]["seed"], 5);
}

#[test]
fn twisted_properties_pass() {
    let o = gcn(&["properties", "--module", "twisted:2", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] twisted congruence"));
}

#[test]
fn invalid_configurations_exit_with_2() {
    assert_eq!(gcn(&["cohomology", "--q", "3..1"]).status.code(), Some(2));
    assert_eq!(gcn(&["cohomology", "--module", "natural:2:0"]).status.code(), Some(2));
    assert_eq!(gcn(&["axioms", "--module", "bogus"]).status.code(), Some(2));
}
