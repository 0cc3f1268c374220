use std::process::{Command, Output};

use realclass::counting::CountReport;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_realclass"))
        .args(args)
        .env_remove("REALCLASS_CAP")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

fn csv_rows(text: &str) -> Vec<csv::StringRecord> {
    csv::Reader::from_reader(text.as_bytes()).records().map(Result::unwrap).collect()
}

#[test]
fn count_examples() {
    let total = |args: &[&str]| json(args)["total"].as_u64().unwrap();
    assert_eq!(total(&["count", "--family", "SL", "--n", "2", "--q", "7", "--kind", "real"]), 7);
    assert_eq!(total(&["count", "--family", "PGL", "--n", "5", "--q", "3", "--kind", "real"]), 28);
    assert_eq!(
        total(&["count", "--family", "SLQ", "--n", "4", "--q", "5", "--y", "2", "--kind", "strongly_real"]),
        57
    );
}

#[test]
fn count_reports_regime_and_deltas() {
    let v = json(&["count", "--family", "SL", "--n", "2", "--q", "7", "--kind", "real"]);
    assert_eq!(v["regime"], "n2mod4_q3mod4");
    assert_eq!(v["delta"]["3"], 3);
    assert_eq!(v["delta"]["4"], 2);
}

#[test]
fn count_csv_matches_json() {
    for args in [
        ["count", "--family", "PSL", "--n", "4", "--q", "5", "--kind", "real"],
        ["count", "--family", "SL", "--n", "6", "--q", "3", "--kind", "strongly_real"],
        ["count", "--family", "GL", "--n", "3", "--q", "4", "--kind", "real"],
    ] {
        let report: CountReport = serde_json::from_str(&stdout(&args)).unwrap();
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let rows = csv_rows(&stdout(&csv_args));
        assert_eq!(rows.len(), report.per_nu.len());
        let mut sum = 0u128;
        for (row, c) in rows.iter().zip(&report.per_nu) {
            assert_eq!(&row[0], report.group.family.as_str());
            assert_eq!(row[1].parse::<u32>().unwrap(), report.group.n);
            assert_eq!(row[2].parse::<u64>().unwrap(), report.group.q);
            assert_eq!(&row[4], report.kind.as_str());
            assert_eq!(&row[5], report.method.as_str());
            assert_eq!(&row[6], report.regime.as_str());
            assert_eq!(row[7], c.nu.to_string());
            let n: u128 = row[8].parse().unwrap();
            assert_eq!(n, c.count);
            sum += n;
        }
        assert_eq!(sum, report.total);
    }
}

#[test]
fn verify_examples() {
    for (args, value) in [
        (["verify", "--family", "PSL", "--n", "2", "--q", "7", "--kind", "real"], 4),
        (["verify", "--family", "GL", "--n", "3", "--q", "3", "--kind", "real"], 12),
        (["verify", "--family", "SL", "--n", "2", "--q", "5", "--kind", "strongly_real"], 2),
    ] {
        let v = json(&args);
        assert_eq!(v[0]["match"], true);
        assert_eq!(v[0]["oracle"], value);
        assert_eq!(v[0]["formula"], value);
    }
}

#[test]
fn verify_csv_matches_json() {
    let args = ["verify", "--family", "SL", "--n", "2", "--q", "9"];
    let v = json(&args);
    let rows = csv_rows(&stdout(&[&args[..], &["--format", "csv"]].concat()));
    let records = v.as_array().unwrap();
    assert_eq!(rows.len(), records.len());
    for (row, r) in rows.iter().zip(records) {
        assert_eq!(&row[4], r["kind"].as_str().unwrap());
        assert_eq!(row[5].parse::<u64>().unwrap(), r["oracle"].as_u64().unwrap());
        assert_eq!(row[6].parse::<u64>().unwrap(), r["formula"].as_u64().unwrap());
        assert_eq!(row[7].parse::<bool>().unwrap(), r["match"].as_bool().unwrap());
    }
}

#[test]
fn genfun_examples() {
    let v = json(&["genfun", "--q", "3", "--terms", "6"]);
    let c: Vec<u64> = v["coefficients"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(&c[..6], &[1, 2, 6, 12, 30, 56]);
    assert!(v["matches"].as_array().unwrap().iter().all(|m| m == true));
    assert_eq!(json(&["genfun", "--q", "2", "--terms", "4"])["coefficients"][4], 10);
    assert_eq!(json(&["genfun", "--q", "5", "--terms", "0"])["coefficients"], serde_json::json!([1]));
}

#[test]
fn genfun_csv_matches_json() {
    let v = json(&["genfun", "--q", "5", "--terms", "7"]);
    let rows = csv_rows(&stdout(&["genfun", "--q", "5", "--terms", "7", "--format", "csv"]));
    for (n, row) in rows.iter().enumerate() {
        assert_eq!(row[0].parse::<usize>().unwrap(), n);
        assert_eq!(row[1].parse::<u64>().unwrap(), v["coefficients"][n].as_u64().unwrap());
        assert_eq!(row[2].parse::<bool>().unwrap(), v["matches"][n].as_bool().unwrap());
    }
}

#[test]
fn enumerate_examples() {
    let len = |args: &[&str]| json(args).as_array().unwrap().len();
    assert_eq!(len(&["enumerate", "--n", "2", "--q", "3", "--filter", "real"]), 6);
    assert_eq!(len(&["enumerate", "--n", "2", "--q", "3", "--filter", "zeta_real"]), 4);
    assert_eq!(len(&["enumerate", "--n", "1", "--q", "2"]), 1);
}

#[test]
fn enumerate_csv_matches_json() {
    let args = ["enumerate", "--n", "3", "--q", "3", "--filter", "real"];
    let v = json(&args);
    let rows = csv_rows(&stdout(&[&args[..], &["--format", "csv"]].concat()));
    let records = v.as_array().unwrap();
    assert_eq!(rows.len(), records.len());
    for (row, r) in rows.iter().zip(records) {
        assert_eq!(&row[0], r["nu"].as_str().unwrap());
        let label: Value = serde_json::from_str(&row[1]).unwrap();
        assert_eq!(label, r["label"]);
        assert_eq!(row[2].parse::<u64>().unwrap(), r["det"].as_u64().unwrap());
        let sl = r.get("sl_real").map(|b| b.to_string()).unwrap_or_default();
        assert_eq!(&row[5], sl);
    }
}

#[test]
fn table13_rows() {
    let out = run(&["table13", "--q", "7"]);
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    let row = rows
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["n"] == 2 && r["family"] == "PSL" && r["kind"] == "real")
        .unwrap();
    assert_eq!(row["published"], "4");
    assert_eq!(row["engine"], 4);
    let out = run(&["table13", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 10);
}

#[test]
fn table13_mismatch_sets_status() {
    // The n = 6 strongly real row for SL disagrees with the engine.
    let out = run(&["table13", "--q", "3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let rows = csv_rows(std::str::from_utf8(&out.stdout).unwrap());
    let row = rows.iter().find(|r| &r[0] == "6" && &r[1] == "SL" && &r[2] == "strongly_real").unwrap();
    assert_eq!((&row[4], &row[5], &row[6]), ("74", "51", "false"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["count", "--family", "PSL", "--n", "6", "--q", "5", "--kind", "real", "--format", "csv"][..],
        &["enumerate", "--n", "3", "--q", "5", "--filter", "all"],
        &["verify", "--family", "PGL", "--n", "2", "--q", "7", "--format", "text"],
        &["table13", "--q", "9"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| run(args).status.code().unwrap();
    assert_eq!(code(&["count", "--family", "GL", "--n", "2", "--q", "6", "--kind", "real"]), 2);
    assert_eq!(code(&["count", "--family", "XL", "--n", "2", "--q", "5", "--kind", "real"]), 2);
    assert_eq!(code(&["count", "--family", "PGL", "--n", "2", "--q", "5", "--kind", "zeta_real"]), 2);
    assert_eq!(code(&["genfun", "--q", "3", "--terms", "13"]), 2);
    assert_eq!(code(&["verify", "--family", "SL", "--n", "4", "--q", "3", "--kind", "real"]), 3);
    assert_eq!(code(&["verify", "--family", "GL", "--n", "3", "--q", "3", "--kind", "real", "--cap", "100"]), 3);
    assert_eq!(code(&["enumerate", "--n", "4", "--q", "3", "--budget", "10"]), 3);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_realclass"))
        .args(["verify", "--family", "GL", "--n", "2", "--q", "5", "--kind", "real"])
        .env("REALCLASS_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}
