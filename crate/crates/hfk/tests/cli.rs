//! End-to-end tests against the real binary: process exit codes, stdout and
//! stderr shapes, and the JSONL table round trip.

use hfk::record::CertificateRecord;
use num_bigint::BigInt;
use std::io::BufRead;
use std::process::{Command, Output};

fn hfk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hfk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

#[test]
fn table_round_trips_through_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("small.jsonl");
    let output = hfk(&["table", "10", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    assert!(stdout(&output).contains("wrote 31 records"));

    let file = std::fs::File::open(&path).unwrap();
    let mut seen = Vec::new();
    for line in std::io::BufReader::new(file).lines() {
        let record: CertificateRecord = serde_json::from_str(&line.unwrap()).unwrap();
        record.reverify().unwrap();
        seen.push((
            record.p.parse::<BigInt>().unwrap(),
            record.q.parse::<BigInt>().unwrap(),
        ));
    }
    assert_eq!(seen.len(), 31);
    let mut sorted = seen.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(seen, sorted, "records sorted by (p, q) without duplicates");
    assert_eq!(seen.first().unwrap(), &(BigInt::from(2), BigInt::from(1)));
    assert_eq!(seen.last().unwrap(), &(BigInt::from(10), BigInt::from(9)));
}

#[test]
fn table_smallest_space_only() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p2.jsonl");
    let output = hfk(&["table", "2", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(0));
    let contents = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = contents.lines().collect();
    assert_eq!(lines.len(), 1);
    let record: CertificateRecord = serde_json::from_str(lines[0]).unwrap();
    assert_eq!((record.p.as_str(), record.q.as_str()), ("2", "1"));
    assert_eq!(
        (record.a.as_str(), record.b.as_str(), record.c.as_str()),
        ("0", "3", "1")
    );
    record.reverify().unwrap();
}

#[test]
fn table_rejects_empty_range_before_touching_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("untouched.jsonl");
    let output = hfk(&["table", "1", path.to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(1));
    assert!(!path.exists(), "no output file on invalid input");
}

#[test]
fn witness_reports_each_method() {
    for (p, q, method) in [
        ("5", "1", "builtin_special"),
        ("5", "2", "brute_force"),
        ("7", "1", "constructed"),
    ] {
        let output = hfk(&["witness", p, q, "--json"]);
        assert_eq!(output.status.code(), Some(0), "L({p}, {q})");
        let record: CertificateRecord = serde_json::from_str(stdout(&output).trim()).unwrap();
        assert_eq!(record.method, method, "L({p}, {q})");
        record.reverify().unwrap();
    }
}

#[test]
fn witness_search_exhaustion_is_exit_two() {
    let output = hfk(&["witness", "5", "2", "--brute", "--box", "0"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("exhausted"));
}

#[test]
fn verify_failure_is_exit_three() {
    let output = hfk(&["verify", "5", "1", "1", "1", "1", "1", "1"]);
    assert_eq!(output.status.code(), Some(3));
    assert!(stdout(&output).contains("(expected 1)"));
}

#[test]
fn invalid_spaces_are_exit_one() {
    for args in [
        &["witness", "4", "2"][..],
        &["hc", "z-zp", "0", "1"][..],
        &["hc", "lens", "6", "3"][..],
    ] {
        let output = hfk(args);
        assert_eq!(output.status.code(), Some(1), "{args:?}");
        assert!(!stderr(&output).is_empty());
    }
}

#[test]
fn alexander_text_and_json_forms() {
    let text = hfk(&["alexander", "5", "1", "0", "0", "0", "1", "1"]);
    assert_eq!(text.status.code(), Some(0));
    assert_eq!(stdout(&text).trim(), "t^-1 + 3 + t");

    let json = hfk(&["alexander", "5", "1", "0", "0", "0", "1", "1", "--json"]);
    assert_eq!(stdout(&json).trim(), r#"{"-1":1,"0":3,"1":1}"#);
}

#[test]
fn hc_values_and_reasons() {
    let lens = hfk(&["hc", "lens", "7", "2"]);
    assert_eq!(lens.status.code(), Some(0));
    let text = stdout(&lens);
    assert!(text.starts_with("1\n"), "{text}");
    assert!(text.contains("reason:"));

    let free = hfk(&["hc", "free-rank", "5"]);
    assert!(stdout(&free).starts_with("3\n"));

    let split = hfk(&["hc", "z-zp", "7", "3"]);
    assert!(stdout(&split).starts_with("1\n"), "{}", stdout(&split));

    let split = hfk(&["hc", "z-zp", "5", "2"]);
    assert!(stdout(&split).starts_with("2\n"), "{}", stdout(&split));

    let chain = hfk(&["hc", "qhs", "3,6"]);
    assert!(stdout(&chain).starts_with("[1, 2]\n"), "{}", stdout(&chain));

    let single = hfk(&["hc", "qhs", "5"]);
    assert!(stdout(&single).starts_with("1\n"), "{}", stdout(&single));

    let connsum = hfk(&["hc", "connsum", "5", "1", "5", "2"]);
    assert!(stdout(&connsum).starts_with("2\n"), "{}", stdout(&connsum));
}

#[test]
fn help_and_version_exit_clean() {
    for args in [&["--help"][..], &["--version"][..], &["witness", "--help"][..]] {
        let output = hfk(args);
        assert_eq!(output.status.code(), Some(0), "{args:?}");
        assert!(!stdout(&output).is_empty());
    }
    let unknown = hfk(&["frobnicate"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn normalize_reduces_the_representative() {
    let output = hfk(&["witness", "5", "7", "--normalize", "--json"]);
    assert_eq!(output.status.code(), Some(0), "{}", stderr(&output));
    let record: CertificateRecord = serde_json::from_str(stdout(&output).trim()).unwrap();
    assert_eq!(record.q, "2");
    record.reverify().unwrap();
}
