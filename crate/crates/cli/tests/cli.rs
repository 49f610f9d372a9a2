use std::fs;
use std::process::{Command, Output};

fn tritmul(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tritmul")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn one() -> String {
    format!("{}1", "0".repeat(96))
}

fn sample(field: &str, seed: &str) -> (String, String) {
    let o = tritmul(&["vectors", "--field", field, "--count", "1", "--seed", seed]);
    assert!(o.status.success());
    let rec: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    (rec["a"].as_str().unwrap().into(), rec["b"].as_str().unwrap().into())
}

#[test]
fn one_times_one() {
    let o = tritmul(&["mul", "--field", "f397", &one(), &one()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), one());
}

#[test]
fn methods_agree_on_fp6() {
    let (a, b) = sample("fp6", "5");
    let outputs: Vec<String> = ["schoolbook", "karatsuba18", "new15", "appendix", "pipeline"]
        .iter()
        .map(|m| {
            let o = tritmul(&["mul", "--field", "fp6", "--method", m, &a, &b]);
            assert!(o.status.success(), "{m}");
            stdout(&o)
        })
        .collect();
    assert!(outputs.iter().all(|o| o == &outputs[0]));
    assert_eq!(outputs[0].trim().split(':').count(), 6);
}

#[test]
fn lfsr_matches_schoolbook() {
    let (a, b) = sample("f397", "9");
    let reference = stdout(&tritmul(&["mul", "--field", "f397", &a, &b]));
    let via_flag = tritmul(&["mul", "--field", "f397", "--method", "lfsr", "--digit", "7", &a, &b]);
    let via_name = tritmul(&["mul", "--field", "f397", "--method", "lfsr:7", &a, &b]);
    assert_eq!(stdout(&via_flag), reference);
    assert_eq!(stdout(&via_name), reference);
}

#[test]
fn malformed_input_is_a_usage_error() {
    let o = tritmul(&["mul", "--field", "f397", &one(), "0123"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("b:"), "{err}");

    assert_eq!(
        tritmul(&["mul", "--field", "fp6", "--method", "lfsr:7", "x", "y"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        tritmul(&["mul", "--field", "fp9", &one(), &one()]).status.code(),
        Some(2)
    );
    assert_eq!(tritmul(&["table", "--digit", "98"]).status.code(), Some(2));
    assert_eq!(tritmul(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn table_rows() {
    let o = tritmul(&["table"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<Vec<String>> = text
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().map(String::from).collect())
        .collect();
    assert_eq!(rows.len(), 5);
    let cycles: Vec<usize> = rows.iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(cycles, [97, 49, 25, 14, 7]);
    assert_eq!(rows[3][1], "KC4");
    assert_eq!(rows[4][1], "KKC4");
    let muls: Vec<usize> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(muls.windows(2).all(|w| w[0] < w[1]));

    let custom = stdout(&tritmul(&["table", "--digit", "3,97"]));
    assert!(custom.lines().nth(2).unwrap().split_whitespace().nth(2) == Some("1"));
}

#[test]
fn counts_report() {
    let o = tritmul(&["counts"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let count = |name: &str| -> u64 {
        let line = text.lines().find(|l| l.starts_with(name)).unwrap();
        line.split_whitespace().last().unwrap().parse().unwrap()
    };
    assert_eq!(count("schoolbook (flat)"), 36);
    assert_eq!(count("schoolbook (nested)"), 27);
    assert_eq!(count("karatsuba18"), 18);
    assert_eq!(count("new15"), 15);
    assert_eq!(count("pipeline"), 15);
    assert!(text.contains("15/18 = 0.833"), "{text}");
}

#[test]
fn vectors_round_trip_and_tamper() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("v.jsonl");
    let p = path.to_str().unwrap();
    let again = dir.path().join("w.jsonl");

    assert!(tritmul(&["vectors", "--count", "12", "--seed", "7", "--out", p])
        .status
        .success());
    assert!(tritmul(&[
        "vectors",
        "--count",
        "12",
        "--seed",
        "7",
        "--out",
        again.to_str().unwrap()
    ])
    .status
    .success());
    let text = fs::read_to_string(&path).unwrap();
    assert_eq!(text, fs::read_to_string(&again).unwrap());
    assert_eq!(text.lines().count(), 12);

    let ok = tritmul(&["verify", p]);
    assert_eq!(ok.status.code(), Some(0), "{}", stdout(&ok));
    assert!(stdout(&ok).contains("records 12  failed 0"));

    // Flip one digit of one expected value.
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let mut rec: serde_json::Value = serde_json::from_str(&lines[4]).unwrap();
    let mut e: Vec<u8> = rec["expected"].as_str().unwrap().bytes().collect();
    e[10] = if e[10] == b'0' { b'1' } else { b'0' };
    rec["expected"] = String::from_utf8(e).unwrap().into();
    lines[4] = serde_json::to_string(&rec).unwrap();
    fs::write(&path, lines.join("\n") + "\n").unwrap();

    let bad = tritmul(&["verify", p]);
    assert_eq!(bad.status.code(), Some(1));
    let report = stdout(&bad);
    assert!(report.contains("records 12  failed 1"), "{report}");
    assert!(report.contains("line 5: mismatch"), "{report}");
}

#[test]
fn verify_parse_errors_name_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    let good = stdout(&tritmul(&["vectors", "--count", "2"]));
    fs::write(
        &path,
        format!("{good}{{\"op\":\"f397_mul\",\"a\":\"1\",\"b\":\"1\",\"expected\":\"1\",\"seed\":0}}\n"),
    )
    .unwrap();
    let o = tritmul(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3: a:"), "{err}");
    assert_eq!(tritmul(&["verify", "/nonexistent/file"]).status.code(), Some(2));
}

#[test]
fn bench_runs() {
    let o = tritmul(&["bench", "--field", "fp2", "--count", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("informational"));
    assert_eq!(
        tritmul(&["bench", "--field", "f397", "--method", "new15"])
            .status
            .code(),
        Some(2)
    );
}
