mod support;

use std::fs;

use jsonschema::JSONSchema;
use serde_json::Value;
use support::{posmon, posmon_json};

fn schema() -> JSONSchema {
    let text = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schema/output.schema.json"))
        .expect("schema file");
    let v: Value = serde_json::from_str(&text).expect("schema is JSON");
    JSONSchema::compile(&v).expect("schema compiles")
}

#[test]
fn theorem3_b_ii() {
    let (code, doc) = posmon_json(&["theorem3", "--type", "B_ii"]);
    assert_eq!(code, 0);
    let els = doc["elements"].as_array().unwrap();
    assert_eq!(els.len(), 2);
    assert!(els.iter().all(|e| e["verified"] == true));
    assert_eq!(doc["status"], "holds");
}

#[test]
fn equiv_exit_codes() {
    assert_eq!(posmon(&["equiv", "--type", "B_ii", "--u", "ab", "--v", "ba"]).code, 1);
    assert_eq!(posmon(&["equiv", "--type", "B_ii", "--u", "ab", "--v", "ab"]).code, 0);
    assert_eq!(posmon(&["equiv", "--type", "B_ii", "--u", "bcba", "--v", "cabb"]).code, 0);
}

#[test]
fn usage_errors() {
    let r = posmon(&["frobnicate"]);
    assert_eq!(r.code, 64);
    assert!(r.stderr.contains("theorem3") && r.stderr.contains("omega-check"));
    assert_eq!(posmon(&["class", "--word", "ab"]).code, 64);
    assert_eq!(
        posmon(&["class", "--type", "B_ii", "--presentation-file", "x.pres", "--word", "ab"]).code,
        64
    );
    assert_eq!(posmon(&["class", "--type", "B_ii", "--word", "ab", "--budget-nodes", "0"]).code, 64);
    assert_eq!(posmon(&["class", "--type", "Z_z", "--word", "ab"]).code, 64);
    assert_eq!(posmon(&["class", "--type", "B_ii", "--word", "abx"]).code, 64);
    assert_eq!(posmon(&["rep-verify", "--type", "A_i"]).code, 64);
    assert_eq!(posmon(&["omega-check", "--all", "--type", "A_i"]).code, 64);
    assert_eq!(posmon(&["--help"]).code, 0);
    assert_eq!(posmon(&["class", "--help"]).code, 0);
}

#[test]
fn presentation_file() {
    let dir = std::env::temp_dir().join(format!("posmon-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join("comm.pres");
    fs::write(&path, "# commuting pair\nletters: a b\nrel: ab = ba\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, doc) = posmon_json(&["class", "--presentation-file", p, "--word", "aab"]);
    assert_eq!(code, 0);
    assert_eq!(doc["size"], 3);
    assert_eq!(doc["canonical"], "aab");
    assert_eq!(doc["presentation"]["source"], p);
    fs::write(&path, "letters: a b\nrel: ab = b\n").unwrap();
    assert_eq!(posmon(&["class", "--presentation-file", p, "--word", "a"]).code, 64);
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let (code, doc) = posmon_json(&[
        "class", "--type", "H_ii", "--word", "babacbabacbabac", "--budget-nodes", "500",
    ]);
    assert_eq!(code, 2);
    assert_eq!(doc["status"], "inconclusive");
    assert!(doc["visited"].as_u64().unwrap() > 500);
    assert_eq!(doc["budget_nodes"], 500);
    let (code, doc) = posmon_json(&[
        "equiv", "--type", "H_ii", "--u", "babacbabacbabac", "--v", "cbacbacbacbacba", "--budget-nodes", "500",
    ]);
    assert_eq!(code, 2);
    assert_eq!(doc["verdict"], "inconclusive");
}

#[test]
fn class_elision() {
    let (_, doc) = posmon_json(&["class", "--type", "B_vi", "--word", "acacaacaca"]);
    assert_eq!(doc["size"], 432);
    assert_eq!(doc["members"].as_array().unwrap().len(), 432);
    let (_, doc) = posmon_json(&["class", "--type", "H_ii", "--word", "acacaacacaacaca"]);
    assert_eq!(doc["members_elided"], true);
    assert!(doc["members"].as_array().unwrap().is_empty());
    let size = doc["size"].as_u64().unwrap();
    let (_, full) = posmon_json(&["class", "--type", "H_ii", "--word", "acacaacacaacaca", "--full"]);
    assert_eq!(full["members"].as_array().unwrap().len() as u64, size);
}

#[test]
fn derive_replays_in_text() {
    let r = posmon(&["derive", "--type", "H_ii", "--u", "acaca", "--v", "cacac"]);
    assert_eq!(r.code, 0);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[1].contains("acbac"));
    assert!(lines[2].contains("cacac"));
}

#[test]
fn outputs_match_schema() {
    let s = schema();
    let runs: &[&[&str]] = &[
        &["catalog"],
        &["class", "--type", "B_ii", "--word", "bcba"],
        &["equiv", "--type", "B_ii", "--u", "ab", "--v", "ba"],
        &["derive", "--type", "H_ii", "--u", "acaca", "--v", "cacac"],
        &["derive", "--type", "B_ii", "--u", "ab", "--v", "ba"],
        &["divides", "--type", "B_ii", "--u", "bba", "--w", "bcba", "--side", "left"],
        &["divides", "--type", "B_ii", "--u", "b", "--w", "bcba", "--side", "right"],
        &["common-multiples", "--type", "B_ii", "--u", "b", "--v", "c", "--side", "left", "--length", "4"],
        &["lcm", "--type", "B_ii", "--u", "b", "--v", "c", "--side", "left", "--max-length", "4"],
        &["lcm", "--type", "A_i", "--u", "b", "--v", "c", "--side", "left", "--max-length", "4"],
        &["fundamental", "--type", "B_ii", "--word", "bbb"],
        &["fundamental", "--type", "B_iv", "--word", "abcb", "--independent"],
        &["quasi-central", "--type", "A_ii", "--word", "aba"],
        &["theorem3", "--type", "A_i"],
        &["cancel-scan", "--type", "B_ii", "--max-length", "4"],
        &["morphism", "--from", "B_vi", "--to", "H_iii", "--map", "a=b,b=a,c=c"],
        &["coxeter", "--type", "B_ii", "--max-k", "3"],
        &["coxeter", "--type", "A_ii", "--max-k", "1"],
        &["rep-verify", "--type", "B_ii", "--branch", "degenerate"],
        &["rep-verify", "--type", "H_ii"],
        &["omega-check", "--type", "B_v"],
        &["class", "--type", "H_ii", "--word", "babacbabacbabac", "--budget-nodes", "100"],
    ];
    for args in runs {
        let (_, doc) = posmon_json(args);
        let result = s.validate(&doc);
        if let Err(errors) = result {
            let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
            panic!("{args:?}: {msgs:?}");
        }
    }
}

#[test]
fn schema_rejects_malformed_documents() {
    let s = schema();
    let (_, mut doc) = posmon_json(&["class", "--type", "B_ii", "--word", "bba"]);
    assert!(s.is_valid(&doc));
    doc.as_object_mut().unwrap().remove("size");
    assert!(!s.is_valid(&doc));
    let (_, mut doc) = posmon_json(&["equiv", "--type", "B_ii", "--u", "ab", "--v", "ba"]);
    doc["verdict"] = "maybe".into();
    assert!(!s.is_valid(&doc));
}

#[test]
fn json_is_deterministic() {
    for args in [
        &["theorem3", "--type", "H_iii", "--format", "json"][..],
        &["cancel-scan", "--type", "B_ii", "--max-length", "5", "--format", "json"][..],
        &["rep-verify", "--type", "B_vi", "--format", "json"][..],
    ] {
        assert_eq!(posmon(args).stdout, posmon(args).stdout);
    }
}

#[test]
fn text_reports() {
    let r = posmon(&["catalog"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout.lines().count(), 17);
    assert!(r.stdout.contains("H_ii"));
    let r = posmon(&["quasi-central", "--type", "A_ii", "--word", "aba"]);
    assert!(r.stdout.contains("a->b b->a"));
    let r = posmon(&["omega-check", "--type", "A_i"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("A_i: ok"));
}

#[test]
fn morphism_reports_failing_relation() {
    let (code, doc) = posmon_json(&["morphism", "--from", "B_ii", "--to", "B_ii", "--map", "a=c,b=b,c=a"]);
    assert_eq!(code, 1);
    assert_eq!(doc["valid"], false);
    assert_eq!(posmon(&["morphism", "--from", "B_ii", "--to", "B_ii", "--map", "a=a,b=b"]).code, 64);
    assert_eq!(posmon(&["morphism", "--from", "B_ii", "--to", "B_ii", "--map", "a=a,b=b,c=c"]).code, 0);
}
