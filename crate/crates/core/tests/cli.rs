use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn rado(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rado"))
        .args(args)
        .env_remove("RADO_THREADS")
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(out.stdout).expect("utf8");
    let doc: Value = serde_json::from_str(stdout.trim()).unwrap_or_else(|e| panic!("{args:?}: {e}\n{stdout}"));
    (out.status.code().expect("exit code"), doc, stdout.trim().to_string())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn formula_golden() {
    let (code, _, text) = rado(&["formula", "3", "4", "--mode", "discrete"]);
    assert_eq!(code, 0);
    assert_eq!(
        text,
        r#"{"command":"formula","payload":{"value":"14"},"spec":{"gamma":"1","k":3,"l":4},"status":"ok"}"#
    );
    let (_, doc, _) = rado(&["formula", "2", "3", "--mode", "continuous", "--gamma", "2"]);
    assert_eq!(doc["payload"]["value"], "14");
    let (code, doc, _) = rado(&["formula", "1", "5", "--mode", "k1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["value"], "5");
}

#[test]
fn formula_rejects_bad_input() {
    for args in [
        &["formula", "4", "3"][..],
        &["formula", "2", "3", "--gamma", "0"],
        &["formula", "2", "3", "--gamma", "-1/2"],
        &["formula", "2", "3", "--gamma", "0.5"],
        &["formula", "2", "3", "--mode", "discrete", "--gamma", "2"],
        &["no-such-command"],
    ] {
        let (code, doc, _) = rado(args);
        assert_eq!(code, 64, "{args:?}");
        assert_eq!(doc["status"], "invalid_input");
    }
}

#[test]
fn discrete_values() {
    let (code, doc, _) = rado(&["discrete", "2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["value"], 5);
    assert_eq!(doc["payload"]["formula_mismatch"], false);
    let (_, doc, _) = rado(&["discrete", "2", "5"]);
    assert_eq!(doc["payload"]["value"], 13);
}

#[test]
fn discrete_without_propagation_explores_more() {
    let (_, with, _) = rado(&["discrete", "3", "4"]);
    let (code, without, _) = rado(&["discrete", "3", "4", "--no-propagation"]);
    assert_eq!(code, 0);
    assert_eq!(without["payload"]["value"], 14);
    let nodes = |d: &Value| d["payload"]["stats"]["nodes_explored"].as_u64().unwrap();
    assert!(nodes(&without) > nodes(&with));
}

#[test]
fn discrete_cap_is_unproved() {
    let (code, doc, _) = rado(&["discrete", "3", "3", "--max-n", "8"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "unproved");
}

#[test]
fn lower_bound_examples() {
    let (code, doc, _) = rado(&["lower-bound", "2", "3"]);
    assert_eq!(code, 0);
    let c = &doc["payload"]["coloring"];
    assert_eq!(c["red"].to_string(), r#"[["1","2","[)"],["6","7","[)"]]"#);
    assert_eq!(c["blue"].to_string(), r#"[["2","6","[)"]]"#);
    assert_eq!(doc["payload"]["verdict"], "Valid");

    let (_, doc, _) = rado(&["lower-bound", "3", "3", "--gamma", "1/2"]);
    let c = &doc["payload"]["coloring"];
    assert_eq!(c["red"].to_string(), r#"[["1/2","3/2","[)"],["9/2","11/2","[)"]]"#);
    assert_eq!(c["blue"].to_string(), r#"[["3/2","9/2","[)"]]"#);

    let (_, doc, _) = rado(&["lower-bound", "2", "2"]);
    let c = &doc["payload"]["coloring"];
    assert_eq!(c["red"].to_string(), r#"[["1","2","[)"],["4","5","[)"]]"#);
    assert_eq!(c["blue"].to_string(), r#"[["2","4","[)"]]"#);
}

#[test]
fn lower_bound_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for l in 2..=10u32 {
        for k in 2..=l {
            let file = dir.path().join(format!("c{k}_{l}.json"));
            let (ks, ls) = (k.to_string(), l.to_string());
            let (code, _, _) = rado(&["lower-bound", &ks, &ls, "--out", path_str(&file)]);
            assert_eq!(code, 0);
            let (code, doc, _) = rado(&["verify-coloring", "--file", path_str(&file), &ks, &ls]);
            assert_eq!(code, 0, "({k},{l}): {doc}");
        }
    }
}

#[test]
fn verify_coloring_rejections() {
    let dir = tempfile::tempdir().unwrap();
    let all_blue = dir.path().join("blue.json");
    std::fs::write(&all_blue, r#"{"blue":[["1","7","[]"]],"end":"7","end_inclusive":true,"gamma":"1","red":[]}"#).unwrap();
    let (code, doc, _) = rado(&["verify-coloring", "--file", path_str(&all_blue), "2", "3"]);
    assert_eq!(code, 1);
    assert_eq!(doc["payload"]["witness"]["color"], "blue");

    let overlap = dir.path().join("overlap.json");
    std::fs::write(
        &overlap,
        r#"{"blue":[["2","7","[)"]],"end":"7","end_inclusive":false,"gamma":"1","red":[["1","3","[)"]]}"#,
    )
    .unwrap();
    let (code, _, _) = rado(&["verify-coloring", "--file", path_str(&overlap), "2", "3"]);
    assert_eq!(code, 64);

    let missing = dir.path().join("missing.json");
    let (code, _, _) = rado(&["verify-coloring", "--file", path_str(&missing), "2", "3"]);
    assert_eq!(code, 64);
}

#[test]
fn certify_examples() {
    let (code, doc, _) = rado(&["certify-upper", "2", "4"]);
    assert_eq!(code, 0);
    assert_eq!(doc["payload"]["domain_end"], "9");
    let (code, _, _) = rado(&["certify-upper", "3", "5"]);
    assert_eq!(code, 0);
    let (code, doc, _) = rado(&["certify-upper", "2", "4", "--grid-denominator", "1"]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "unproved");
}

#[test]
fn certify_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let mut specs: Vec<(u32, u32)> = (2..=10).map(|l| (2, l)).collect();
    specs.extend([(3, 3), (3, 4), (3, 5), (4, 4), (4, 5), (5, 5)]);
    for (k, l) in specs {
        let file = dir.path().join(format!("u{k}_{l}.json"));
        let (code, _, _) = rado(&["certify-upper", &k.to_string(), &l.to_string(), "--out", path_str(&file)]);
        assert_eq!(code, 0);
        let text = std::fs::read_to_string(&file).unwrap();
        let (code, doc, _) = rado(&["verify-certificate", "--file", path_str(&file)]);
        assert_eq!(code, 0, "({k},{l}): {doc}");
        // canonical re-emission is byte identical
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(reparsed.to_string(), text);
        let cert = rado::forcing::ForcingCertificate::from_json(&text).unwrap();
        assert_eq!(cert.to_json(), text);
    }
}

#[test]
fn tampered_certificate_reports_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    rado(&["certify-upper", "2", "3", "--out", path_str(&file)]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let forced = &mut doc["root"][0]["steps"][0]["forced"];
    *forced = Value::from(if forced == "red" { "blue" } else { "red" });
    std::fs::write(&file, doc.to_string()).unwrap();
    let (code, out, _) = rado(&["verify-certificate", "--file", path_str(&file)]);
    assert_eq!(code, 1);
    assert_eq!(out["payload"]["failure"]["path"], "root[0]");
    assert_eq!(out["payload"]["failure"]["step"], 0);
}

#[test]
fn arity_mismatch_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c.json");
    rado(&["certify-upper", "2", "3", "--out", path_str(&file)]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    doc["spec"]["l"] = Value::from(4);
    std::fs::write(&file, doc.to_string()).unwrap();
    let (code, _, _) = rado(&["verify-certificate", "--file", path_str(&file)]);
    assert_eq!(code, 64);
    std::fs::write(&file, "{not json").unwrap();
    let (code, _, _) = rado(&["verify-certificate", "--file", path_str(&file)]);
    assert_eq!(code, 64);
}

#[test]
fn threads_env_is_validated() {
    let out = Command::new(env!("CARGO_BIN_EXE_rado"))
        .args(["discrete", "2", "2"])
        .env("RADO_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
    let out = Command::new(env!("CARGO_BIN_EXE_rado"))
        .args(["discrete", "3", "3"])
        .env("RADO_THREADS", "0")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["payload"]["value"], 11);
}
