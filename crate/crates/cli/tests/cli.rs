use std::process::{Command, Output};

use quadperiod::qforms::{enumerate_forms, FormKind};
use quadperiod::{IntPoly, QForm};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quadperiod"))
        .args(args)
        .env_remove("QUADPERIOD_PREC_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn sum_at_one_over_pi() {
    let o = run(&["sum", "--D", "5", "--k", "2", "--x", "1/pi", "--tol", "1e-8"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("= 2.000000"), "{out}");
    assert!(out.contains("+-"));
}

#[test]
fn lists_csv_rows() {
    let o = run(&["lists", "--D", "5", "--x", "1/pi", "--depth", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("form,value,list,step,included,closing,value_full"));
    assert!(lines.next().unwrap().starts_with("[-1,1,1],1.216989"));
    let second = out.lines().find(|l| l.starts_with("[-1,-1,1],")).unwrap();
    let v: f64 = second.split(',').nth(8).unwrap().parse().unwrap();
    assert!((v - 0.580369).abs() < 5e-7, "{second}");
    let o = run(&["lists", "--D", "5", "--x", "1/pi", "--format", "csv"]);
    assert!(stdout(&o).lines().any(|l| l.contains(",6.86e-17,2,14,")));
}

#[test]
fn verify_cocycle_passes() {
    let o = run(&["verify", "--suite", "cocycle", "--Dmax", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS cocycle"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["sum", "--x", "1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["sum", "--D", "9", "--x", "1"]).status.code(), Some(1));
    assert_eq!(run(&["sum", "--D", "5", "--x", "1/("]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    let capped = Command::new(env!("CARGO_BIN_EXE_quadperiod"))
        .args(["cf", "--x", "1/pi", "--steps", "40", "--prec", "16"])
        .env("QUADPERIOD_PREC_CAP", "32")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn precision_retry_is_recorded() {
    let v = json(&["cf", "--x", "1/pi", "--steps", "40", "--prec", "16"]);
    assert!(v["retries"].as_u64().unwrap() > 0);
    assert!(v["precision"].as_u64().unwrap() > 16);
    assert_eq!(v["result"].as_array().unwrap().len(), 40);
}

#[test]
fn forms_and_polynomials_round_trip() {
    let v = json(&["forms", "--D", "21"]);
    let forms: Vec<QForm> = serde_json::from_value(v["result"]["forms"].clone()).unwrap();
    assert_eq!(forms, enumerate_forms(21, FormKind::Simple).unwrap());
    let v = json(&["periods", "--D", "5", "--k", "4"]);
    let p: IntPoly = serde_json::from_value(v["result"]["period"]["poly"].clone()).unwrap();
    assert_eq!(p, IntPoly::from_i64(&[-2, 0, 0, 0, 0, 0, 2]));
    assert_eq!(v["result"]["constant"], "2");
}

#[test]
fn json_is_deterministic() {
    let args = ["sum", "--D", "13", "--k", "4", "--x", "1/e", "--ledger"];
    let mut a = json(&args);
    let mut b = json(&args);
    a["elapsed_ms"] = Value::Null;
    b["elapsed_ms"] = Value::Null;
    assert_eq!(a, b);
    assert!(a["result"]["ledger"].as_array().unwrap().len() > 3);
}

#[test]
fn class_and_star_sums() {
    let v = json(&["sum", "--D", "5", "--x", "2/5", "--class", "[1,1,-1]", "--group", "gamma1", "--rep", "simple-gamma1"]);
    assert_eq!(v["result"]["status"], "exact");
    let o = run(&["sum", "--D", "5", "--x", "1/3", "--class", "[1,1,-1]", "--star"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("4X^2 - 4"));
    // a form of another discriminant is a usage error
    assert_eq!(run(&["sum", "--D", "5", "--x", "1/3", "--class", "[1,2,-1]"]).status.code(), Some(1));
}
