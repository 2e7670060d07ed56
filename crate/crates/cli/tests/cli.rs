use std::process::{Command, Output};

use serde_json::Value;

fn qhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qhs")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = qhs(args);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout));
    });
    (v, out.status.code().unwrap())
}

#[test]
fn rea_relations() {
    let (v, code) = json(&["relations", "--algebra", "rea", "--n", "2", "--json"]);
    assert_eq!(code, 0);
    let rules = v["rules"].as_array().unwrap();
    assert_eq!(rules.len(), 6);
    assert!(rules.iter().any(|r| r["lhs"] == "l[1,2]*l[2,2]" && r["rhs"] == "(q^-2)*l[2,2]*l[1,2]"));
}

#[test]
fn normal_form_text() {
    let out = qhs(&["nf", "--algebra", "frt", "--n", "2", "x[1,2]*x[1,1]"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "(q^-1)*x[1,1]*x[1,2]\n");
}

#[test]
fn nilcone_hilbert() {
    let (v, code) = json(&["hilbert", "--quotient", "nilcone", "--n", "2", "--max-deg", "6", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 3, 5, 7, 9, 11, 13]));
    let (c, _) = json(&["hilbert", "--quotient", "nilcone", "--n", "2", "--max-deg", "6", "--json", "--q-at-one"]);
    assert_eq!(c["dims"], v["dims"]);
    assert_eq!(c["path"], "classical");
}

#[test]
fn csv_tables() {
    let out = qhs(&["hilbert", "--quotient", "nilcone", "--n", "2", "--max-deg", "2", "--csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "degree,dim\n0,1\n1,3\n2,5\n");
    let out = qhs(&["weights", "--quotient", "nilcone", "--n", "2", "--max-deg", "1", "--csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "degree,weight,mult\n0,\"(0,0)\",1\n1,\"(1,-1)\",1\n1,\"(0,0)\",1\n1,\"(-1,1)\",1\n");
}

#[test]
fn orbit_quotient_needs_xi() {
    let out = qhs(&["hilbert", "--quotient", "orbit", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let xi = r#"{"n":2,"r":0,"eigenvalues":["2","3"]}"#;
    let (v, code) = json(&["hilbert", "--quotient", "orbit", "--xi", xi, "--max-deg", "3", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["dims"], serde_json::json!([1, 3, 5, 7]));
}

#[test]
fn reflection_equation_checks() {
    let (v, code) = json(&["re-check", "--n", "2", "--matrix", "[[1,0],[0,1]]", "--json"]);
    assert_eq!((v["solution"].as_bool(), code), (Some(true), 0));
    let (v, code) = json(&["re-check", "--n", "3", "--matrix", "[[0,1,0],[0,0,1],[0,0,0]]", "--json"]);
    assert_eq!((v["solution"].as_bool(), code), (Some(false), 1));
    assert!(!v["residuals"].as_array().unwrap().is_empty());
    let (v, _) = json(&["re-check", "--n", "2", "--matrix", r#"[["c",0],[0,"c"]]"#, "--json"]);
    assert_eq!(v["solution"], true);
    assert_eq!(v["parameters"], serde_json::json!(["c"]));
    let out = qhs(&["re-check", "--n", "3", "--matrix", "[[1,0],[0,1]]"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn podles_sphere() {
    let (v, code) = json(&["podles", "--t", "0", "--d", "1", "--json"]);
    assert_eq!(code, 0);
    assert_eq!(v["alpha"], "0");
    assert_eq!(v["beta"], "-q^-1-q^-3");
    assert_eq!(v["relations"].as_array().unwrap().len(), 4);
}

#[test]
fn tau_values() {
    let xi = r#"{"n":2,"r":0,"eigenvalues":["2","3"]}"#;
    let out = qhs(&["tau", "--xi", xi]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "tau_1 = 2*q+3*q^-1\ntau_2 = 6\n");
}

#[test]
fn checks_and_exit_codes() {
    for args in [
        vec!["check", "hecke", "--n", "3"],
        vec!["check", "braid", "--n", "2"],
        vec!["check", "hopf", "--n", "2"],
        vec!["check", "coinvariant", "--n", "2"],
        vec!["check", "central", "--algebra", "rea", "--n", "2"],
        vec!["check", "phi-tau2", "--t", "2", "--d", "3"],
    ] {
        let out = qhs(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let (v, code) = json(&["check", "central", "--element", "l[1,2]", "--json"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "fail");
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["status"] == "fail" && c["residual"] != Value::Null));
}

#[test]
fn usage_errors() {
    assert_eq!(qhs(&["hilbert", "--bogus"]).status.code(), Some(2));
    assert_eq!(qhs(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(qhs(&["nf", "--algebra", "frt", "x[3,1]"]).status.code(), Some(2));
    assert_eq!(qhs(&["nf", "--algebra", "frt", "x[1,1]*("]).status.code(), Some(2));
    assert_eq!(qhs(&["relations", "--csv"]).status.code(), Some(2));
    assert_eq!(qhs(&["tau", "--xi", r#"{"n":2,"r":3,"eigenvalues":[]}"#]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["weights", "--quotient", "nilcone", "--n", "2", "--max-deg", "3", "--json"];
    assert_eq!(qhs(&args).stdout, qhs(&args).stdout);
    let args = ["relations", "--algebra", "sl", "--n", "2", "--json"];
    assert_eq!(qhs(&args).stdout, qhs(&args).stdout);
}
