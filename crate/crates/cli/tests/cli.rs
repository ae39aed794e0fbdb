use std::sync::OnceLock;

use brauer_cli::run;
use serde_json::Value;

fn brauer(args: &[&str]) -> (i32, String, String) {
    let argv = std::iter::once("brauer").chain(args.iter().copied()).map(String::from);
    let (code, doc) = run(argv);
    (code, doc.body, doc.diagnostics)
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (code, body, diag) = brauer(&full);
    assert!(!body.is_empty(), "{args:?}: no output, {diag}");
    let v: Value = serde_json::from_str(&body).unwrap();
    assert_valid(&v);
    (code, v)
}

fn schema() -> &'static jsonschema::JSONSchema {
    static S: OnceLock<jsonschema::JSONSchema> = OnceLock::new();
    S.get_or_init(|| {
        let text = include_str!("../schema/output.schema.json");
        let doc: Value = serde_json::from_str(text).unwrap();
        jsonschema::JSONSchema::compile(Box::leak(Box::new(doc))).unwrap()
    })
}

fn assert_valid(v: &Value) {
    if let Err(errors) = schema().validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:#?}");
    }
    assert_no_floats(v);
}

fn assert_no_floats(v: &Value) {
    match v {
        Value::Number(n) => assert!(n.is_i64() || n.is_u64(), "float {n}"),
        Value::Array(a) => a.iter().for_each(assert_no_floats),
        Value::Object(o) => o.values().for_each(assert_no_floats),
        _ => {}
    }
}

#[test]
fn invariants_of_the_three_field_extremal_class() {
    let (code, v) = json(&["invariants", "--q", "3", "--s1", "0", "--s2", "-3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["omega"], 12);
    assert_eq!(v["br_det"], "36");
    assert_eq!(v["resolved"]["br"], "36");
    assert_eq!(v["resolved"]["det_ns"], "1");
}

#[test]
fn omega_catalog_tau_two() {
    let (code, v) = json(&["omega-catalog", "--tau", "2"]);
    assert_eq!(code, 0);
    let rows: Vec<(String, u64)> = v["profiles"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| (p["parts"].as_str().unwrap().to_string(), p["omega"].as_u64().unwrap()))
        .collect();
    let expect = [("(2,2)", 4), ("(3)", 3), ("(4)", 2), ("(6)", 1)];
    assert_eq!(rows, expect.map(|(p, w)| (p.to_string(), w)));
}

#[test]
fn check_weil_by_coefficients() {
    let (code, v) = json(&["check-weil", "--coeffs", "1,0,-3,0,9", "--q", "3", "--weight", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["valid"], true);
    assert_eq!(v["supersingular"], true);

    let (_, bad) = json(&["check-weil", "--coeffs", "1,5,0,0,9", "--q", "3"]);
    assert_eq!(bad["valid"], false);
    assert!(bad["failure"].is_string());
}

#[test]
fn conventions_agree() {
    // x^4 - x^3 + 3x^2 - 3x + 9 over F_3, i.e. L(t) = 1 - t + 3t^2 - 3t^3 + 9t^4
    let (_, a) = json(&["invariants", "--q", "3", "--coeffs", "1,-1,3,-3,9", "--convention", "descending"]);
    let (_, b) = json(&["invariants", "--q", "3", "--coeffs", "1,-1,3,-3,9", "--convention", "ascending"]);
    let (_, c) = json(&["invariants", "--q", "3", "--s1", "1", "--s2", "3"]);
    assert_eq!(a, c);
    assert_eq!(b, c);
    let (code, _, diag) = brauer(&["invariants", "--q", "3", "--coeffs", "1,2,3"]);
    assert_eq!(code, 1);
    assert!(diag.contains("not of the form"));
}

#[test]
fn verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let (_, body, _) = brauer(&["invariants", "--q", "5", "--s1", "2", "--s2", "11", "--format", "json"]);
    std::fs::write(&path, &body).unwrap();
    let p = path.to_str().unwrap();
    let (code, v) = json(&["invariants", "--q", "5", "--verify", p]);
    assert_eq!(code, 0);
    assert_eq!(v["verified"], true);

    let mut doc: Value = serde_json::from_str(&body).unwrap();
    doc["br_det"] = "17".into();
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, v) = json(&["invariants", "--q", "5", "--verify", p]);
    assert_eq!(code, 2);
    assert_eq!(v["differing_fields"], serde_json::json!(["br_det"]));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(brauer(&["frobnicate"]).0, 1);
    assert_eq!(brauer(&["invariants", "--q", "3"]).0, 1);
    assert_eq!(brauer(&["invariants", "--q", "6", "--s1", "0", "--s2", "0"]).0, 1);
    assert_eq!(brauer(&["invariants", "--q", "2", "--s1", "9", "--s2", "0"]).0, 1);
    assert_eq!(brauer(&["check-weil", "--q", "3", "--coeffs", "1,x"]).0, 1);
    assert_eq!(brauer(&["table", "--id", "nope"]).0, 1);
    assert_eq!(brauer(&["enumerate", "--q", "3", "--format", "yaml"]).0, 1);
    let (code, body, diag) = brauer(&["--unknown-flag"]);
    assert_eq!((code, body.is_empty()), (1, true));
    assert!(diag.contains("Usage"));
    let (code, body, _) = brauer(&["--help"]);
    assert_eq!(code, 0);
    assert!(body.contains("bound-scan"));
}

#[test]
fn every_command_renders_in_every_format() {
    let cmds: &[&[&str]] = &[
        &["check-weil", "--q", "2", "--s1", "0", "--s2", "-3"],
        &["invariants", "--q", "2", "--s1", "0", "--s2", "-3"],
        &["enumerate", "--q", "4", "--supersingular"],
        &["omega-catalog", "--tau", "4"],
        &["table", "--id", "ss-catalog"],
        &["table", "--id", "prime-field:7"],
        &["table", "--id", "square-counts"],
        &["bound-scan", "--q", "2,3,4"],
        &["lmfdb-verify", "--q", "5", "--p-rank", "0", "--offline"],
    ];
    for cmd in cmds {
        let (code, _) = json(cmd);
        assert_eq!(code, 0, "{cmd:?}");
        for fmt in ["text", "csv"] {
            let mut a = cmd.to_vec();
            a.extend(["--format", fmt]);
            let (code, body, diag) = brauer(&a);
            assert_eq!(code, 0, "{a:?}: {diag}");
            assert!(!body.trim().is_empty(), "{a:?}");
        }
    }
}

#[test]
fn csv_rows_parse() {
    let (_, body, _) = brauer(&["enumerate", "--q", "7", "--supersingular", "--format", "csv"]);
    let mut r = csv::Reader::from_reader(body.as_bytes());
    let header = r.headers().unwrap().clone();
    assert_eq!(&header[0], "s1");
    let records: Vec<_> = r.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), 5);
    let br: Vec<&str> = records.iter().map(|x| &x[6]).collect();
    assert_eq!(br, ["112", "84", "56", "28", "28"]);
}

#[test]
fn sampling_is_seeded() {
    let pick = |seed: &str| {
        let (_, v) = json(&["enumerate", "--q", "9", "--sample", "6", "--seed", seed]);
        assert_eq!(v["count"], 6);
        v["classes"].clone()
    };
    assert_eq!(pick("11"), pick("11"));
    assert_ne!(pick("11"), pick("12"));
    let (_, full) = json(&["enumerate", "--q", "9", "--sample", "100000"]);
    assert_eq!(full["sampled"], false);
}

#[test]
fn lmfdb_verify_offline() {
    let (code, v) = json(&["lmfdb-verify", "--q", "7", "--p-rank", "0", "--offline"]);
    assert_eq!(code, 0);
    assert_eq!(v["matched"], 5);
    assert_eq!(v["confirmed"], true);
    let (code, _, diag) = brauer(&["lmfdb-verify", "--q", "3", "--offline"]);
    assert_eq!(code, 1);
    assert!(diag.contains("no offline data"));
}

#[test]
fn bound_scan_reports_pass() {
    let (code, v) = json(&["bound-scan", "--q", "2,7"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(v["scans"][1]["max_all"]["br_det"], "112");
    assert_eq!(v["observations"].as_array().unwrap().len(), 1);
}

#[test]
fn schema_rejects_malformed_documents() {
    let (_, mut v) = json(&["invariants", "--q", "3", "--s1", "0", "--s2", "-3"]);
    v["br_det"] = serde_json::json!(36.0);
    assert!(!schema().is_valid(&v));
    v["br_det"] = serde_json::json!(36);
    assert!(!schema().is_valid(&v));
    let (_, mut w) = json(&["omega-catalog", "--tau", "1"]);
    w.as_object_mut().unwrap().remove("schema_version");
    assert!(!schema().is_valid(&w));
}
