use std::process::{Command, Output};

use mirabolic::characters::enumerate_characters;
use mirabolic::eisenstein::{coeff_wlong_cell, EisParams};
use mirabolic::C64;
use serde_json::Value;

fn run_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mirabolic"));
    cmd.args(args).env_remove("MIRABOLIC_PRECISION");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, &[])
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn cx(v: &Value) -> C64 {
    C64::new(v["re"].as_f64().unwrap(), v["im"].as_f64().unwrap())
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn chars_examples() {
    let out = run(&["chars", "--modulus", "3", "--list"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["command"], "chars");
    assert_eq!(v["result"]["count"], 2);
    assert!(v["version"].is_string());

    let v = json(&run(&["chars", "--modulus", "1", "--index", "0", "--gauss"]));
    assert!((cx(&v["result"]["gauss_sum"]) - 1.0).norm() < 1e-14);

    let v = json(&run(&["chars", "--modulus", "4", "--index", "1", "--fft", "1"]));
    assert!((cx(&v["result"]["fft"]["value"]) - C64::new(0.0, 2.0)).norm() < 1e-14);

    let v = json(&run(&["chars", "--modulus", "12", "--index", "3", "--conductor"]));
    assert!(v["result"]["conductor"].as_u64().unwrap() <= 12);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&run(&["chars", "--modulus", "0", "--list"])), 2);
    assert_eq!(code(&run(&["chars", "--modulus", "5", "--bogus"])), 2);
    assert_eq!(code(&run(&["eis", "--n", "3", "--nu", "1,x", "--modulus", "4", "--r", "1,1"])), 2);
    let out = run(&["chars", "--modulus", "5", "--index", "9", "--gauss"]);
    assert_eq!(code(&out), 3);
    assert_eq!(json(&out)["result"]["error"]["kind"], "invalid_argument");
}

#[test]
fn eis_single_coefficient_matches_library() {
    let out = run(&["eis", "--n", "3", "--nu", "0.5,0.0", "--modulus", "4", "--char-index", "1", "--cell", "wlong", "--r", "2,2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let psi = enumerate_characters(4).into_iter().nth(1).unwrap();
    let p = EisParams::new(3, C64::new(0.5, 0.0), psi).unwrap();
    let want = coeff_wlong_cell(&p, &[2, 2]).unwrap();
    assert_eq!(cx(&v["result"]["value"]), want);
}

#[test]
fn eis_box_and_pole() {
    let v = json(&run(&["eis", "--n", "3", "--nu", "0.3,0.2", "--modulus", "5", "--char-index", "2", "--r-box", "2"]));
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 25);
    let v = json(&run(&["eis", "--n", "4", "--nu", "0.3", "--modulus", "3", "--r-box", "1", "--cell", "big"]));
    assert_eq!(v["result"]["count"], 27);

    let v = json(&run(&["eis", "--n", "3", "--nu", "1", "--modulus", "4", "--char-index", "0", "--pole"]));
    assert_eq!(v["result"]["pole"]["is_polar"], true);
    let res = cx(&v["result"]["pole"]["residue_c0"]);
    assert!((res - 1.0 / 32.0).norm() < 1e-15);
    let v = json(&run(&["eis", "--n", "3", "--nu", "1", "--modulus", "4", "--char-index", "1", "--pole"]));
    assert_eq!(v["result"]["pole"]["is_polar"], false);
}

#[test]
fn eis_pole_is_structured_error() {
    let out = run(&["eis", "--n", "2", "--nu", "1", "--modulus", "1", "--r", "0"]);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["result"]["error"]["kind"], "pole");
    assert!(v["result"]["error"]["at"].is_object());
}

#[test]
fn gamma_examples() {
    let v = json(&run(&["gamma", "--rep", "D4", "--functor", "std"]));
    let factors = v["result"]["factors"].as_array().unwrap();
    assert_eq!(factors.len(), 1);
    assert_eq!(factors[0]["kind"], "C");

    let v = json(&run(&["gamma", "--rep", "D3[0.1]+triv[-0.2]", "--embedding"]));
    let lambda: Vec<C64> = v["result"]["embedding"]["lambda"].as_array().unwrap().iter().map(cx).collect();
    let want = [-1.1, 0.9, 0.2];
    assert_eq!(lambda.len(), 3);
    for (l, w) in lambda.iter().zip(want) {
        assert!((l - w).norm() < 1e-14, "{l} vs {w}");
    }

    let v = json(&run(&["gamma", "--rep", "triv[0.6]+triv[-0.6]", "--validate"]));
    assert_eq!(v["result"]["valid"], false);
    assert!(!v["result"]["violations"].as_array().unwrap().is_empty());

    let v = json(&run(&["gamma", "--rep", "D3[0.1]+triv[-0.2]", "--functor", "ext2", "--twist-parity", "1"]));
    assert_eq!(v["result"]["dimension"], 3);
}

#[test]
fn gamma_errors() {
    let out = run(&["gamma", "--rep", "D3[0.1]+tri[-0.2]"]);
    assert_eq!(code(&out), 2);
    let err = &json(&out)["result"]["error"];
    assert_eq!(err["kind"], "parse");
    assert!(err["position"].as_u64().is_some());
    assert_eq!(code(&run(&["gamma", "--rep", "D3", "--functor", "tensor"])), 3);
}

#[test]
fn verify_betalike_and_unattainable_tolerance() {
    let out = run(&["verify", "--suite", "betalike"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let suite = &v["result"]["suites"][0];
    assert_eq!(suite["suite"], "betalike");
    assert_eq!(suite["passed"], suite["total"]);
    for c in suite["cases"].as_array().unwrap() {
        for key in ["inputs", "closed", "quadrature", "abs_err", "rel_err", "pass"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }

    let out = run(&["verify", "--suite", "betalike", "--tol", "1e-30"]);
    assert_eq!(code(&out), 1);
    let v = json(&out);
    let cases = v["result"]["suites"][0]["cases"].as_array().unwrap().clone();
    assert!(cases.iter().all(|c| c["pass"] == false));
    assert!(cases.iter().any(|c| c["error"]["kind"] == "tolerance_not_met"));
}

#[test]
fn precision_env_override() {
    let v = json(&run_env(&["verify", "--suite", "fe"], &[("MIRABOLIC_PRECISION", "rel_tol=1e-8,max_depth=12")]));
    assert_eq!(v["precision"]["rel_tol"], 1e-8);
    assert_eq!(v["precision"]["max_depth"], 12);
    let out = run_env(&["verify", "--suite", "fe"], &[("MIRABOLIC_PRECISION", "rel_tol=abc")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn deterministic_output() {
    let args = ["eis", "--n", "3", "--nu", "0.7,-0.1", "--modulus", "7", "--char-index", "3", "--r-box", "2"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--suite", "oscillatory"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

fn same_to_15_digits(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= 1e-15 * a.abs().max(b.abs())
}

fn check_round_trip(args: &[&str], rows: Option<&str>) {
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let v = json(&run(args));
    let out = run(&csv_args);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    let records: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    let items: Vec<&Value> = match rows {
        Some(p) => v["result"].pointer(p).unwrap().as_array().unwrap().iter().collect(),
        None => vec![&v["result"]],
    };
    assert_eq!(items.len(), records.len());
    let mut compared = 0;
    for (item, rec) in items.iter().zip(&records) {
        for (h, cell) in header.iter().zip(rec.iter()) {
            let pointer = format!("/{}", h.replace('.', "/"));
            if let Some(x) = item.pointer(&pointer).and_then(Value::as_f64) {
                let y: f64 = cell.parse().unwrap();
                assert!(same_to_15_digits(x, y), "{h}: {x} vs {y}");
                compared += 1;
            }
        }
    }
    assert!(compared > 0);
}

#[test]
fn csv_matches_json() {
    check_round_trip(&["eis", "--n", "3", "--nu", "0.7,-0.1", "--modulus", "7", "--char-index", "3", "--r-box", "2"], Some("/rows"));
    check_round_trip(&["gamma", "--rep", "D3[0.1]+triv[-0.2]", "--functor", "sym2", "--eval", "0.3,1.7", "--embedding"], None);
    check_round_trip(&["chars", "--modulus", "15", "--list"], Some("/characters"));
    check_round_trip(&["chars", "--modulus", "7", "--index", "2", "--gauss", "--fft", "-3"], None);
    check_round_trip(&["verify", "--suite", "fe"], Some("/suites/0/cases"));
}
