//! The `lrn` binary: exit codes, record schema, golden override.

use std::process::Command;

use serde_json::Value;

fn lrn(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_lrn"))
        .args(args)
        .env_remove("LRN_GOLDEN")
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn solve_emits_one_tagged_record() {
    let (code, out, _) = lrn(&["solve", "2", "1"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 1);
    let v: Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(v["x"], 11);
    assert_eq!(v["y"], 3);
    assert_eq!(v["n"], 5);
    assert_eq!(v["case"], "CaseI");
    assert_eq!(v["complete"], true);
}

#[test]
fn flag_errors_exit_2() {
    assert_eq!(lrn(&["solve"]).0, 2);
    assert_eq!(lrn(&["table", "--c1", "9..3"]).0, 2);
    assert_eq!(lrn(&["solve", "2", "1", "--jobs", "0"]).0, 2);
    assert_eq!(lrn(&["solve", "1", "7"]).0, 2);
}

#[test]
fn classnum_and_sieve() {
    let (code, out, _) = lrn(&["classnum", "110", "--format", "pretty"]);
    assert_eq!((code, out.trim()), (0, "12"));
    let (code, out, _) = lrn(&["sieve", "2", "55"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["union"], serde_json::json!([3, 5]));
    assert_eq!(v["class_number"], 12);
}

#[test]
fn verify_against_tampered_golden_exits_1() {
    let dir = std::env::temp_dir().join(format!("lrn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("golden.csv");
    // drop the (2,1) row: the sweep then reports it as extra
    let text = lrn::oracle::GOLDEN_CSV.replace("2,1,11,3,5\n", "");
    std::fs::write(&path, text).unwrap();
    let args = [
        "verify", "--c1", "2", "--c2", "1..5", "--thue-bound", "1000", "--case3-bound", "1000",
    ];
    let out = Command::new(env!("CARGO_BIN_EXE_lrn"))
        .args(args)
        .env("LRN_GOLDEN", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("1 matched, 0 missing, 1 extra"), "{stdout}");
    assert!(stdout.contains("extra 2,1,11,3,5"));

    // the flag path works too, and the embedded table passes
    let (code, out, _) = lrn(&args);
    assert_eq!(code, 0, "{out}");
    let mut with_flag = args.to_vec();
    let p = path.to_str().unwrap();
    with_flag.extend(["--golden", p]);
    assert_eq!(lrn(&with_flag).0, 1);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn output_is_identical_across_job_counts() {
    let base = [
        "table", "--c1", "2..4", "--c2", "1..30", "--thue-bound", "500", "--case3-bound", "500",
    ];
    let mut one = base.to_vec();
    one.extend(["--jobs", "1"]);
    let mut three = base.to_vec();
    three.extend(["--jobs", "3"]);
    let (a, b) = (lrn(&one), lrn(&three));
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}
