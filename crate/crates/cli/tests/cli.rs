use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pdrqa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdrqa")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = pdrqa(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&all)).expect("valid JSON")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(rows: &[Vec<String>], name: &str) -> Vec<String> {
    let idx = rows[0].iter().position(|c| c == name).unwrap_or_else(|| panic!("no column {name}"));
    rows[1..].iter().map(|r| r[idx].clone()).collect()
}

#[test]
fn generate_prints_the_prefix() {
    assert_eq!(stdout(&["generate", "--n", "16"]), "0100010101000100\n");
    assert_eq!(stdout(&["generate", "--n", "1"]), "0\n");
}

#[test]
fn generate_cross_check_agrees_at_two_to_the_twenty() {
    let text = stdout(&["generate", "--n", "1048576", "--cross-check"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[3], "AGREE");
    for (line, name) in lines.iter().zip(["substitution", "valuation", "toeplitz"]) {
        let word = line.strip_prefix(name).unwrap().trim_start();
        assert_eq!(word.len(), 1 << 20);
    }
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["generate", "--n", "0"][..],
        &["rqa", "--n", "1"],
        &["converge", "--schedule", "2,4"],
        &["converge", "--schedule", "64,32"],
        &["converge", "--schedule", "8,16", "--lmin", "7"],
        &["rqa", "--n", "64", "--eps", "0"],
        &["oracle", "--lmin", "5", "--lmax", "3"],
        &["frobnicate"],
    ] {
        assert_eq!(pdrqa(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unwritable_output_exits_with_three() {
    let out = pdrqa(&["generate", "--n", "4", "--out", "/nonexistent-dir/x.txt"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rqa.csv");
    let printed = stdout(&["rqa", "--n", "256"]);
    stdout(&["rqa", "--n", "256", "--out", path.to_str().unwrap()]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), printed);
}

#[test]
fn output_is_identical_across_thread_counts() {
    for cmd in [
        &["converge", "--schedule", "128,512,2048", "--lengths", "1,2,5"][..],
        &["lines", "--n", "1500", "--m", "2"],
        &["rqa", "--n", "3000", "--lmin", "3"],
    ] {
        for format in ["csv", "json"] {
            let run = |threads: &str| {
                let mut args = cmd.to_vec();
                args.extend(["--format", format, "--threads", threads]);
                stdout(&args)
            };
            let one = run("1");
            assert_eq!(one, run("3"), "{cmd:?} {format}");
            assert_eq!(one, run("8"), "{cmd:?} {format}");
        }
    }
}

#[test]
fn csv_has_header_and_unix_line_endings() {
    let text = stdout(&["converge", "--schedule", "64,128"]);
    assert!(!text.contains('\r'));
    assert!(text.ends_with('\n'));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][..4], ["n", "m", "eps", "lmin"]);
    assert!(rows.iter().all(|r| r.len() == rows[0].len()));
    assert_eq!(column(&rows, "rr_oracle"), ["5/9", "5/9"]);
    for v in column(&rows, "rr") {
        let (p, q) = v.split_once('/').expect("p/q");
        assert!(p.parse::<u64>().is_ok() && q.parse::<u64>().is_ok());
    }
}

#[test]
fn converge_reaches_the_limits() {
    let text = stdout(&["converge", "--schedule", "256,512,1024,2048,4096,8192"]);
    let rows = csv_rows(&text);
    let floats = |name: &str| column(&rows, name).iter().map(|v| v.parse::<f64>().unwrap()).collect::<Vec<_>>();
    let rr_err = floats("rr_err");
    let entr = floats("entr");
    assert!(*rr_err.last().unwrap() < 0.01);
    assert!(rr_err.last().unwrap() < rr_err.first().unwrap());
    assert!((entr.last().unwrap() - 1.386294).abs() < 0.03);
    let rr = floats("rr_f");
    assert!((rr.last().unwrap() - 5.0 / 9.0).abs() / (5.0 / 9.0) < 0.01);
}

#[test]
fn eps_overrides_m_and_both_are_recorded() {
    let v = json(&["rqa", "--n", "512", "--m", "1", "--eps", "0.3"]);
    assert_eq!(v["config"]["eps"], 0.3);
    assert_eq!(v["config"]["m"], 1);
    assert_eq!(v["config"]["m_effective"], 3);
    assert_eq!(v["rows"][0]["m"], 3);
    assert_eq!(v["rows"][0]["eps"], 0.3);
    let plain = json(&["rqa", "--n", "512", "--m", "3"]);
    assert_eq!(v["rows"][0]["rr"], plain["rows"][0]["rr"]);
}

#[test]
fn json_has_exactly_config_rows_oracle() {
    let v = json(&["oracle", "--lmax", "8"]);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys, ["config", "oracle", "rows"]);
    assert_eq!(v["rows"].as_array().unwrap().len(), 8);
    assert_eq!(v["rows"][0]["dens"], "1/9");
    assert_eq!(v["rows"][0]["rr"], "5/9");
    assert_eq!(v["rows"][0]["lavg"], "5/2");
}

#[test]
fn json_output_matches_the_schema() {
    let schema_path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path).unwrap()).unwrap();
    let validator = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let docs = [
        json(&["generate", "--n", "32", "--cross-check"]),
        json(&["lines", "--n", "300"]),
        json(&["lines", "--n", "300", "--kind", "vertical", "--m", "2"]),
        json(&["rqa", "--n", "300", "--eps", "0.1"]),
        json(&["rqa", "--n", "2", "--lmin", "5"]),
        json(&["oracle", "--m", "3", "--lmin", "2", "--lmax", "40"]),
        json(&["converge", "--schedule", "64,128", "--lengths", "1,3,4"]),
    ];
    for doc in &docs {
        if let Err(errors) = validator.validate(doc) {
            let msgs: Vec<String> = errors.map(|e| format!("{e} at {}", e.instance_path)).collect();
            panic!("{} does not validate: {msgs:?}", doc["config"]["command"]);
        }
    }
    let mut broken = docs[3].clone();
    broken.as_object_mut().unwrap().remove("oracle");
    assert!(!validator.is_valid(&broken));
}

#[test]
fn verify_passes_on_the_sequence() {
    let text = stdout(&["verify", "--bound", "96", "--n", "1024"]);
    assert!(text.ends_with("PASS\n"), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 4);
}

#[test]
fn verify_reports_singleton_vertical_lines_for_m_three() {
    let text = stdout(&["verify", "--bound", "32", "--n", "2048", "--m", "3"]);
    assert!(text.contains("m=3 lengths [1]"), "{text}");
}

#[test]
fn verify_catches_a_corrupted_letter() {
    let out = pdrqa(&["verify", "--bound", "64", "--n", "512", "--corrupt-at", "40"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL starts"), "{text}");
    assert!(text.contains("counterexample i="), "{text}");
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("starts: counterexample i="), "{stderr}");
    for field in ["i=", "j=", "l=", "n=", "m="] {
        assert!(stderr.contains(field));
    }
}
