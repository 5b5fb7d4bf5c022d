use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qspectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspectra"))
        .args(args)
        .env_remove("SPECTRAL_SUM_PRECISION")
        .output()
        .expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

/// Report lines with the wall-time field removed.
fn stable(out: &Output) -> Vec<Value> {
    let mut v = lines(out);
    if let Some(Value::Object(last)) = v.last_mut() {
        last.remove("wall_time_s");
    }
    v
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn approx(v: &Value) -> f64 {
    v["approx"].as_str().unwrap().parse().unwrap()
}

#[test]
fn spectrum_of_star_plus_edge() {
    let dir = tempfile::tempdir().unwrap();
    let mut text = String::from("11 11\n");
    for v in 1..11 {
        text.push_str(&format!("0 {v}\n"));
    }
    text.push_str("1 2\n");
    let path = write(dir.path(), "sp.txt", &text);
    let out = qspectra(&["spectrum", &path]);
    assert_eq!(out.status.code(), Some(0));
    let rows = lines(&out);
    let f = approx(&rows[0]["f"]);
    assert!(0.118 < f && f < 0.137, "{f}");
    assert_eq!(rows[0]["n"], 11);
    assert_eq!(rows[0]["e"], 11);
    assert_eq!(rows[1]["summary"]["pass"], 1);
}

#[test]
fn spectrum_of_k4_exact_and_float() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "k4.txt", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let rows = lines(&qspectra(&["spectrum", &path, "--exact"]));
    let spec: Vec<&str> = rows[0]["spectrum"].as_array().unwrap().iter().map(|e| e["lo"].as_str().unwrap()).collect();
    assert_eq!(spec, ["6", "2", "2", "2"]);
    let rows = lines(&qspectra(&["spectrum", &path, "--float"]));
    let vals: Vec<f64> = rows[0]["spectrum"].as_array().unwrap().iter().map(approx).collect();
    for (v, want) in vals.iter().zip([6.0, 2.0, 2.0, 2.0]) {
        assert!((v - want).abs() < 1e-9);
    }
    let rows = lines(&qspectra(&["spectrum", &path, "--laplacian"]));
    assert_eq!(rows[0]["matrix"], "L");
    assert_eq!(rows[0]["spectrum"][0]["lo"], "4");
}

#[test]
fn malformed_edge_list_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.txt", "4 2\n0 1\n3 x\n");
    let out = qspectra(&["spectrum", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(qspectra(&[]).status.code(), Some(2));
    assert_eq!(qspectra(&["bounds"]).status.code(), Some(2));
    assert_eq!(qspectra(&["base-case", "--max-n", "9"]).status.code(), Some(2));
    assert_eq!(qspectra(&["base-case", "--max-n", "11"]).status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_qspectra"))
        .args(["spectrum", "/nonexistent"])
        .env("SPECTRAL_SUM_PRECISION", "not-a-number")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn precision_override_tightens_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
    let width = |prec: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_qspectra"))
            .args(["spectrum", &path])
            .env("SPECTRAL_SUM_PRECISION", prec)
            .output()
            .unwrap();
        let row = &lines(&out)[0];
        let lo: f64 = num(&row["S_k"]["lo"]);
        let hi: f64 = num(&row["S_k"]["hi"]);
        hi - lo
    };
    assert!(width("2^-20") > width("2^-60"));
}

fn num(v: &Value) -> f64 {
    let s = v.as_str().unwrap();
    match s.split_once('/') {
        Some((a, b)) => a.parse::<f64>().unwrap() / b.parse::<f64>().unwrap(),
        None => s.parse().unwrap(),
    }
}

#[test]
fn manifest_lists_everything() {
    let out = qspectra(&["--manifest"]);
    assert_eq!(out.status.code(), Some(0));
    let m = &lines(&out)[0];
    assert_eq!(m["subcommands"].as_array().unwrap().len(), 6);
    assert!(m["suites"].as_array().unwrap().iter().any(|s| s == "edge-insert"));
    assert!(m["families"].as_array().unwrap().len() >= 40);
}

#[test]
fn base_case_small_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let ckpt = dir.path().join("ckpt.jsonl");
    let ckpt = ckpt.to_str().unwrap();
    let full = qspectra(&["base-case", "--max-n", "7", "--checkpoint", ckpt]);
    assert_eq!(full.status.code(), Some(0));
    let rows = lines(&full);
    assert_eq!(rows.len(), 5);
    for (row, want) in rows.iter().zip([6, 21, 112, 853]) {
        assert_eq!(row["classes"], want);
        assert_eq!(row["argmin_is_star_plus"], true);
        assert_eq!(row["verdict"], "PASS");
    }

    // An interrupted run: keep the first lines and a torn tail.
    let text = fs::read_to_string(ckpt).unwrap();
    let kept: Vec<&str> = text.lines().take(3).collect();
    fs::write(ckpt, format!("{}\n{{\"n\":7,\"chu", kept.join("\n"))).unwrap();
    let resumed = qspectra(&["base-case", "--max-n", "7", "--checkpoint", ckpt, "--resume"]);
    let strip = |out: &Output| {
        let mut v = stable(out);
        if let Some(Value::Object(last)) = v.last_mut() {
            last.remove("parameters");
        }
        v
    };
    assert_eq!(strip(&full), strip(&resumed));
}

#[test]
fn appendix_runs_and_skips_figures() {
    let out = qspectra(&["appendix"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = lines(&out);
    assert!(rows.iter().any(|r| r["verdict"] == "SKIPPED" && r["source"] == "figure"));
    assert!(rows.iter().any(|r| r["verdict"] == "PASS" && r["source"] == "table2"));
    let out = qspectra(&["appendix", "--families", "table1", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.lines().next().unwrap().starts_with("verdict,"));
}

#[test]
fn corrupted_registry_fails() {
    let dir = tempfile::tempdir().unwrap();
    let text = qspectra_core::families::Registry::builtin().to_json();
    let mut reg: Value = serde_json::from_str(&text).unwrap();
    let fams = reg["families"].as_array_mut().unwrap();
    let g3 = fams.iter_mut().find(|f| f["id"] == "G3").unwrap();
    let first = g3["charpoly"][0][0].as_str().unwrap().to_string();
    g3["charpoly"][0][0] = Value::String(format!("{first}+1"));
    let path = write(dir.path(), "reg.json", &reg.to_string());
    let out = qspectra(&["appendix", "--registry", &path, "--families", "G3"]);
    assert_eq!(out.status.code(), Some(1));
    let rows = lines(&out);
    assert!(rows[0]["report"]["mismatches"].as_array().unwrap().len() >= 2);
}

#[test]
fn star_plus_bracket_small_range() {
    let out = qspectra(&["bounds", "--star-plus", "--n-range", "11..40"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out).last().unwrap()["summary"]["pass"], 30);
}

#[test]
fn g2_integer_identities_pass() {
    let out = qspectra(&["bounds", "--g2", "--t-range", "7..9"]);
    for row in lines(&out).iter().filter(|r| r["check"] == "g2-identity") {
        let name = row["identity"]["name"].as_str().unwrap();
        if name.starts_with("P(2)") || name.starts_with("P(1)") || name.starts_with("P(0)") {
            assert_eq!(row["verdict"], "PASS", "{name}");
        }
        assert_eq!(row["identity"]["sign_holds"], true);
    }
}

#[test]
fn g1a_chain_is_strict() {
    let out = qspectra(&["bounds", "--monotonicity", "--chain", "G1a", "--grid", "6"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn hjoin_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "spec.json",
        r#"{"host":[[0,1],[1,2]],"parts":[{"n":2,"r":1,"edges":[[0,1]]},{"n":1,"r":0},{"n":5,"r":0}]}"#,
    );
    let out = qspectra(&["hjoin", &path]);
    assert_eq!(out.status.code(), Some(0));
    let row = &lines(&out)[0];
    assert_eq!(row["order"], 8);
    let q: Vec<Vec<String>> = serde_json::from_value(row["quotient"].clone()).unwrap();
    assert_eq!(q, [["3", "1", "0"], ["2", "7", "5"], ["0", "1", "1"]]);
    let bad = write(dir.path(), "bad.json", r#"{"host":[[0,1]],"parts":[{"n":3,"r":1,"edges":[[0,1]]},{"n":1,"r":0}]}"#);
    assert_eq!(qspectra(&["hjoin", &bad]).status.code(), Some(2));
}

#[test]
fn properties_seeded_reports_are_identical() {
    let args = ["properties", "--suite", "fan", "--seed", "11", "--count", "60"];
    let a = qspectra(&args);
    let b = qspectra(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stable(&a), stable(&b));
    let c = qspectra(&["properties", "--suite", "fan", "--seed", "11", "--count", "60", "--jobs", "1"]);
    assert_eq!(stable(&a)[..stable(&a).len() - 1], stable(&c)[..stable(&c).len() - 1]);
}

#[test]
fn negated_self_test_fails_loudly() {
    let out = qspectra(&["properties", "--suite", "trace", "--max-n", "5", "--self-test-negate"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(lines(&out).iter().filter(|r| r.get("suite").is_some()).all(|r| r["verdict"] == "FAIL"));
}

#[test]
fn exhaustive_suites_small() {
    for suite in ["interlace", "edge-insert", "tree", "bipartite", "patterns"] {
        let out = qspectra(&["properties", "--suite", suite, "--max-n", "5"]);
        assert_eq!(out.status.code(), Some(0), "{suite}");
    }
    let out = qspectra(&["properties", "--suite", "compound", "--count", "10", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
}
