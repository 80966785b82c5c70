use std::process::{Command, Output};

use serde_json::Value;

fn ellhyp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellhyp")).args(args).env_remove("ELLHYP_MAX_NODES").output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is one JSON document")
}

fn value(doc: &Value) -> (f64, f64) {
    let v = &doc["result"]["value"];
    (v[0].as_f64().unwrap(), v[1].as_f64().unwrap())
}

#[test]
fn egamma_at_sqrt_pq_is_one() {
    let out = ellhyp(&["eval", "egamma", "--z", "0.244948974278+0i", "--p", "0.3", "--q", "0.2"]);
    assert!(out.status.success());
    let (re, im) = value(&json(&out));
    assert!((re - 1.0).abs() < 1e-10 && im.abs() < 1e-10);
}

#[test]
fn theta_vanishes_at_one() {
    for precision in ["double", "extended"] {
        let out = ellhyp(&["eval", "theta", "--z", "1", "--p", "0.5", "--precision", precision]);
        assert!(out.status.success());
        let (re, im) = value(&json(&out));
        assert_eq!((re, im), (0.0, 0.0));
    }
}

#[test]
fn extended_precision_agrees_with_double() {
    let args = ["eval", "egamma", "--z", "0.4+0.3i", "--p", "0.3@0.4", "--q", "0.25@-1"];
    let d = value(&json(&ellhyp(&args)));
    let mut ext = args.to_vec();
    ext.extend(["--precision", "extended"]);
    let e = value(&json(&ellhyp(&ext)));
    assert!(((d.0 - e.0).powi(2) + (d.1 - e.1).powi(2)).sqrt() < 1e-13 * (e.0.hypot(e.1)));
}

#[test]
fn vseries_matches_the_closed_form_product() {
    let (p, q) = (0.2, 0.3);
    let out = ellhyp(&["eval", "vseries", "--ft", "0.6,0.7+0.1i,0.5,0.8", "--N", "2", "--p", "0.2", "--q", "0.3"]);
    assert!(out.status.success());
    let (re, im) = value(&json(&out));
    let base = ellhyp::BaseParams::new(ellhyp::C64::new(p, 0.0), ellhyp::C64::new(q, 0.0)).unwrap();
    let c = ellhyp::C64::new;
    let rhs = ellhyp::series::frenkel_turaev_rhs(
        c(0.6, 0.0),
        c(0.7, 0.1),
        c(0.5, 0.0),
        c(0.8, 0.0),
        2,
        &base,
        &Default::default(),
    )
    .unwrap();
    assert!((c(re, im) - rhs).norm() <= 1e-10 * rhs.norm().max(1e-300) + 1e-14);
}

#[test]
fn verify_elbeta_battery_passes_and_is_reproducible() {
    let a = json(&ellhyp(&["verify", "elbeta", "--draws", "50", "--seed", "7"]));
    assert_eq!(a["summary"]["total"], 50);
    assert_eq!(a["summary"]["passed"], 50);
    let b = json(&ellhyp(&["verify", "elbeta", "--draws", "50", "--seed", "7"]));
    let strip = |d: &Value| d["reports"].as_array().unwrap().iter().map(|r| r["report"].clone()).collect::<Vec<_>>();
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(a["config"], b["config"]);
}

#[test]
fn quick_suite_exits_zero() {
    let out = ellhyp(&["verify", "all", "--quick"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["summary"]["failed"], 0);
    assert_eq!(doc["schema_version"], 1);
}

#[test]
fn violated_window_exits_one_with_window_violation() {
    let out = ellhyp(&[
        "verify",
        "e7_2",
        "--p",
        "0.3",
        "--q",
        "0.2",
        "--params",
        "0.9,0.9,0.9,0.9,0.5,0.5,0.5,0.0438957475994513",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["reports"][0]["report"]["failure"]["kind"], "WindowViolation");
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        vec!["verify", "no_such_identity"],
        vec!["eval", "egamma", "--z", "0.3x", "--p", "0.3", "--q", "0.2"],
        vec!["eval", "egamma", "--z", "0.3", "--p", "1.3", "--q", "0.2"],
        vec!["eval", "nope"],
        vec!["index", "/no/such/file.json", "--p", "0.2", "--q", "0.2"],
    ] {
        let out = ellhyp(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn seiberg_index_matches_magnetic_dual() {
    let out = ellhyp(&[
        "index",
        "builtin:seiberg_electric",
        "--Nc",
        "2",
        "--Nf",
        "3",
        "--p",
        "0.2",
        "--q",
        "0.25",
        "--s",
        "0.7,0.6+0.1i,0.65",
        "--t",
        "0.6,0.6,0.49500049500049509-0.082500082500082533i",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let doc = json(&out);
    assert_eq!(doc["result"]["dual"]["theory"], "seiberg_magnetic");
    assert!(doc["result"]["dual"]["residual"].as_f64().unwrap() < 1e-9);
}

#[test]
fn index_outside_window_names_the_field() {
    let out = ellhyp(&[
        "index",
        "builtin:seiberg_electric",
        "--Nc",
        "2",
        "--Nf",
        "3",
        "--p",
        "0.2",
        "--q",
        "0.25",
        "--s",
        "0.5,0.45+0.1i,0.55",
        "--t",
        "1.2,0.3,1.0695187165775402-0.23767082590612007i",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc = json(&out);
    assert_eq!(doc["result"]["failure"]["kind"], "AuditFailure");
    assert!(doc["result"]["failure"]["message"].as_str().unwrap().contains("field 1"));
}

#[test]
fn index_from_spec_file_and_schema_errors() {
    let dir = std::env::temp_dir().join(format!("ellhyp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let spec = ellhyp::sci::seiberg_electric(2, 3).unwrap();
    let good = dir.join("electric.json");
    std::fs::write(&good, spec.to_json()).unwrap();
    let out = ellhyp(&["index", good.to_str().unwrap(), "--p", "0.2", "--q", "0.25", "--y", "1,1,1,1,1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(json(&out)["result"].get("dual").is_none());

    let bad = dir.join("bad.json");
    std::fs::write(&bad, spec.to_json().replace("\"1/3\"", "\"x/3\"")).unwrap();
    let out = ellhyp(&["index", bad.to_str().unwrap(), "--p", "0.2", "--q", "0.25", "--y", "1,1,1,1,1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/fields/"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn anomaly_subcommand_on_seiberg_pair() {
    let out = ellhyp(&["anomaly", "builtin:seiberg_electric", "--Nc", "2", "--Nf", "4"]);
    assert!(out.status.success());
    let doc = json(&out);
    let fams = doc["result"]["report"]["families"].as_array().unwrap();
    assert_eq!(fams.len(), 6);
    assert!(fams.iter().all(|f| f["violations"].as_array().unwrap().is_empty()));
}

#[test]
fn out_flag_writes_the_document() {
    let path = std::env::temp_dir().join(format!("ellhyp-out-{}.json", std::process::id()));
    let out = ellhyp(&["verify", "gamma_eq", "--draws", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["summary"]["total"], 12);
    std::fs::remove_file(&path).ok();
}

#[test]
fn max_nodes_env_caps_quadrature() {
    let out = Command::new(env!("CARGO_BIN_EXE_ellhyp"))
        .args(["verify", "elbeta", "--draws", "1"])
        .env("ELLHYP_MAX_NODES", "16")
        .output()
        .unwrap();
    let doc = json(&out);
    assert_eq!(doc["config"]["cfg"]["max_nodes"], serde_json::json!([16, 16, 16]));
    let bad = Command::new(env!("CARGO_BIN_EXE_ellhyp"))
        .args(["verify", "elbeta"])
        .env("ELLHYP_MAX_NODES", "lots")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
