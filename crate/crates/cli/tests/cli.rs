mod common;

use std::fs;

use common::{assert_valid, mquwm, status, stdout_json, violations};
use serde_json::json;

fn json_of(args: &[&str]) -> (i32, serde_json::Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = mquwm(&full);
    (status(&out), stdout_json(&out))
}

fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn check_rm_fails_condition_one() {
    let dir = tempfile::tempdir().unwrap();
    let rm = mquwm(&["rm", "--m", "4"]);
    assert_eq!(status(&rm), 0);
    let path = write(&dir, "rm4.code", &String::from_utf8(rm.stdout).unwrap());
    let (code, body) = json_of(&["check", &path]);
    assert_eq!(code, 1);
    assert_valid("check", &body);
    assert_eq!(body["violations"][0], "condition (1): weight set {0,8,16}");
    assert_eq!(body["conditions"], json!({ "c1": false, "c2": true }));
}

#[test]
fn check_passing_code() {
    let (code, body) = json_of(&["check", "C_16_6_1"]);
    assert_eq!(code, 0);
    assert_valid("check", &body);
    assert_eq!((body["a"].as_u64(), body["l"].as_u64(), body["set_size"].as_u64()), (Some(2), Some(16), Some(2)));
}

#[test]
fn parse_errors_exit_2_with_line() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(&dir, "bad.code", "# comment\n8 2\n10010110\n0101x101\n");
    let out = mquwm(&["check", &bad]);
    assert_eq!(status(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 4"), "{err}");

    let out = mquwm(&["--format", "json", "wdist", &bad]);
    assert_eq!(status(&out), 2);
    let body = stdout_json(&out);
    assert_valid("error", &body);
    assert_eq!(body["error"]["kind"], "input");
}

#[test]
fn missing_file_and_bad_scope_exit_2() {
    assert_eq!(status(&mquwm(&["wdist", "/nonexistent/file.code"])), 2);
    assert_eq!(status(&mquwm(&["verify-paper", "--scope", "7"])), 2);
    assert_eq!(status(&mquwm(&["dump", "--id", "C_16_6_9"])), 2);
}

#[test]
fn capacity_guards_exit_3() {
    let (code, body) = json_of(&["classify", "--length", "32"]);
    assert_eq!(code, 3);
    assert_valid("error", &body);
    assert_eq!(body["error"]["kind"], "capacity");

    let dir = tempfile::tempdir().unwrap();
    // RM(1,5) less one generator: redundancy 27, one past the syndrome limit.
    let rm = String::from_utf8(mquwm(&["rm", "--m", "5"]).stdout).unwrap();
    let rows: Vec<&str> = rm.lines().skip(1).take(5).collect();
    let path = write(&dir, "c.code", &format!("32 5\n{}\n", rows.join("\n")));
    assert_eq!(status(&mquwm(&["covrad", &path])), 3);
}

#[test]
fn outputs_match_schemas() {
    for (schema, args) in [
        ("rm", vec!["rm", "--m", "3"]),
        ("dump", vec!["dump", "--id", "C_{32,11,2}"]),
        ("wdist", vec!["wdist", "C_8_5"]),
        ("equiv", vec!["equiv", "C_16_7_2", "C_16_7_2"]),
        ("equiv", vec!["equiv", "C_16_7_1", "C_16_7_2"]),
        ("covrad", vec!["covrad", "C_16_7_1"]),
        ("maximal", vec!["maximal", "C_16_6_2"]),
        ("maximal", vec!["maximal", "C_16_8_1", "--force-slow"]),
        ("classify", vec!["classify", "--length", "16"]),
        ("verify-paper", vec!["verify-paper", "--scope", "16"]),
    ] {
        let (_, body) = json_of(&args);
        assert_valid(schema, &body);
    }
}

#[test]
fn schema_checker_rejects_bad_documents() {
    assert!(!violations("wdist", &json!({ "n": 8, "k": 5 })).is_empty());
    assert!(!violations("wdist", &json!({ "n": 8, "k": 5, "distribution": [1, -1], "x": 0 })).is_empty());
    assert!(!violations("rm", &json!({ "n": 8, "k": 1, "rows": ["1012"] })).is_empty());
    assert!(!violations("error", &json!({ "error": { "kind": "other", "message": "" } })).is_empty());
}

#[test]
fn equiv_witness_is_one_indexed() {
    let (code, body) = json_of(&["equiv", "C_16_6_1", "C_16_6_1"]);
    assert_eq!(code, 0);
    let mut w: Vec<u64> = body["witness"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    w.sort_unstable();
    assert_eq!(w, (1..=16).collect::<Vec<_>>());
    assert_eq!(status(&mquwm(&["equiv", "C_16_6_1", "C_16_6_2"])), 1);
}

#[test]
fn maximal_exit_codes() {
    assert_eq!(status(&mquwm(&["maximal", "C_16_7_1"])), 0);
    let (code, body) = json_of(&["maximal", "C_16_6_1"]);
    assert_eq!(code, 1);
    assert_eq!(body["witness_extension"]["k"], 7);
}

#[test]
fn quwm_writes_matrices_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let out_s = out.to_string_lossy();
    assert_eq!(status(&mquwm(&["quwm", "--code", "C_16_8_1", "--out", &out_s])), 0);
    for i in 1..=8 {
        let text = fs::read_to_string(out.join(format!("H_{i}.txt"))).unwrap();
        assert_eq!(text.lines().count(), 16);
    }
    assert!(!out.join("H_9.txt").exists());
    let report: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_valid("quwm", &report);
    assert_eq!(report["set_size"], 8);
    assert_eq!(report["pairs_checked"], 28);
    assert_eq!(report["params"], json!({ "n": 16, "k": 16, "l": 4, "a": 64 }));
}

fn snapshot(dir: &std::path::Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<_> = [("1", "a"), ("4", "b")]
        .iter()
        .map(|(threads, name)| {
            let (qdir, cdir) = (dir.path().join(format!("{name}q")), dir.path().join(format!("{name}c")));
            let (qo, co) = (qdir.to_string_lossy(), cdir.to_string_lossy());
            let q = mquwm(&["--threads", threads, "--seed", "7", "--format", "json", "quwm", "--code", "C_32_10_102", "--out", &qo, "--randomize"]);
            assert_eq!(status(&q), 0);
            let c = mquwm(&["--threads", threads, "--format", "json", "classify", "--length", "16", "--out", &co]);
            assert_eq!(status(&c), 0);
            let v = mquwm(&["--threads", threads, "--format", "json", "verify-paper", "--scope", "16"]);
            (snapshot(&qdir), snapshot(&cdir), q.stdout, c.stdout, v.stdout)
        })
        .collect();
    assert_eq!((runs[0].0.len(), runs[0].1.len()), (17, 7));
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn seed_changes_randomized_choice() {
    let dir = tempfile::tempdir().unwrap();
    let read = |seed: &str| {
        let out = dir.path().join(seed);
        let o = out.to_string_lossy();
        let q = mquwm(&["--seed", seed, "quwm", "--code", "C_32_10_102", "--out", &o, "--randomize"]);
        assert_eq!(status(&q), 0);
        snapshot(&out)
    };
    assert_ne!(read("1"), read("2"));
}

#[test]
fn verify_paper_scope_16() {
    let (code, body) = json_of(&["verify-paper", "--scope", "16"]);
    assert_eq!(code, 0);
    assert_eq!(body["scope"], "16");
    assert_eq!(body["codes"].as_array().unwrap().len(), 6);
    assert!(body["claims"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn dump_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.code");
    let ps = p.to_string_lossy();
    assert_eq!(status(&mquwm(&["dump", "--id", "C_{32,9,91}", "--out", &ps])), 0);
    let (code, body) = json_of(&["check", &ps]);
    assert_eq!(code, 0);
    assert_eq!((body["n"].as_u64(), body["k"].as_u64()), (Some(32), Some(9)));
}
