use std::fs;
use std::process::{Command, Output};

fn rweyl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rweyl")).args(args).env_remove("RWEYL_CACHE_DIR").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, name: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(name).filter(|rest| rest.starts_with(' ')).map(str::trim))
        .unwrap_or_else(|| panic!("no field {} in\n{}", name, text))
}

#[test]
fn adjoint_of_sl3r() {
    let o = rweyl(&["invariants", "--algebra", "sl3r", "--weight", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(field(&s, "dim_VL"), "2");
    assert_eq!(field(&s, "class"), "non-scalar");
}

#[test]
fn compact_su3_is_empty() {
    let o = rweyl(&["invariants", "--algebra", "su3c", "--weight", "1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert_eq!(field(&s, "class"), "empty");
    assert_eq!(field(&s, "nontrivial"), "false");
}

#[test]
fn rank_one_survey() {
    let o = rweyl(&["survey", "--algebra", "sl2r", "--max-coord", "8", "--out", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let mut rdr = csv::Reader::from_reader(s.as_bytes());
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let weights: Vec<&str> = rows.iter().map(|r| &r[1]).collect();
    let classes: Vec<&str> = rows.iter().map(|r| &r[5]).collect();
    assert_eq!(weights, ["2", "4", "6", "8"]);
    assert_eq!(classes, ["-id", "+id", "-id", "+id"]);
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["algebra", "weight", "in_Q", "dim_V0", "dim_VL", "class", "nontrivial", "prediction", "agree", "millis"]
    );
}

#[test]
fn survey_output_is_deterministic() {
    let args = ["survey", "--algebra", "so(2,3)", "--max-coord", "3", "--out", "jsonl"];
    let a = rweyl(&args);
    let b = rweyl(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    for line in stdout(&a).lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["agree"], true);
    }
}

#[test]
fn describe_so29() {
    let o = rweyl(&["describe", "--algebra", "so(2,9)"]);
    let s = stdout(&o);
    assert_eq!(field(&s, "ambient"), "B5");
    assert_eq!(field(&s, "restricted_type"), "B2");
    assert_eq!(field(&s, "multiplicities"), "7,1");
    assert_eq!(field(&s, "delta0_roots"), "18");
}

#[test]
fn exit_codes() {
    // usage errors
    assert_eq!(rweyl(&["invariants", "--algebra", "nonsense", "--weight", "1"]).status.code(), Some(1));
    assert_eq!(rweyl(&["invariants", "--algebra", "sl3r", "--weight", "1"]).status.code(), Some(1));
    assert_eq!(rweyl(&["invariants", "--algebra", "sl3r", "--weight", "1,x"]).status.code(), Some(1));
    assert_eq!(rweyl(&["frobnicate"]).status.code(), Some(1));
    // capacity
    let o = rweyl(&["invariants", "--algebra", "sl3r", "--weight", "9,9", "--dim-cap", "10"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(rweyl(&["--help"]).status.code(), Some(0));
}

#[test]
fn cache_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["invariants", "--algebra", "sl3r", "--weight", "1,1", "--cache-dir", d];
    let first = rweyl(&args);
    assert_eq!(first.status.code(), Some(0));
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().path()).collect();
    assert_eq!(files.len(), 1);
    let bytes = fs::read(&files[0]).unwrap();
    let second = rweyl(&args);
    assert_eq!(second.stdout, first.stdout);
    assert_eq!(fs::read(&files[0]).unwrap(), bytes);
    assert_eq!(rweyl(&["cache", "--cache-dir", d, "verify"]).status.code(), Some(0));

    let tampered = String::from_utf8(bytes.clone()).unwrap().replace("NonScalar", "PlusId");
    fs::write(&files[0], tampered).unwrap();
    assert_eq!(rweyl(&args).status.code(), Some(3));
    assert_eq!(rweyl(&["cache", "--cache-dir", d, "verify"]).status.code(), Some(3));

    let old = String::from_utf8(bytes).unwrap().replacen("\"schema\": 1", "\"schema\": 0", 1);
    fs::write(&files[0], old).unwrap();
    let o = rweyl(&args);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema"));

    assert_eq!(rweyl(&["cache", "--cache-dir", d, "clear"]).status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_rweyl"))
        .args(["invariants", "--algebra", "sl2r", "--weight", "2"])
        .env("RWEYL_CACHE_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn theorem_suite_passes() {
    let o = rweyl(&["verify"]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{}", s);
    assert!(s.starts_with("THEOREMS"));
    assert!(!s.lines().any(|l| l.starts_with("FAIL")), "{}", s);
}
