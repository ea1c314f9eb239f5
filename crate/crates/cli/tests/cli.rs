use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn ekd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ekd"))
        .args(args)
        .output()
        .expect("ekd runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build(dir: &Path, name: &str, family: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap();
    let mut args = vec!["build", "-o", p];
    args.extend(family);
    let o = ekd(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p.to_string()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../schemas")
        .join(name);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&v).unwrap()
}

fn assert_valid(validator: &jsonschema::Validator, text: &str) {
    let v: Value = serde_json::from_str(text).unwrap();
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn obstruct_eights_json() {
    let dir = tempfile::tempdir().unwrap();
    let two = build(dir.path(), "e2.json", &["eight", "+", "2"]);
    let one = build(dir.path(), "e1.json", &["eight", "+", "1"]);
    let o = ekd(&["obstruct", &two, &one, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_valid(&schema("verdict.schema.json"), &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["result"], "OBSTRUCTED");

    // the verdict is payload: the other direction also exits 0
    let o = ekd(&[
        "obstruct",
        &one,
        &two,
        "--json",
        "--policy",
        "conservative",
        "--euler-sign",
        "-",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"], "NO_OBSTRUCTION_FOUND");
    assert_eq!(v["convention"], "-");
    assert_eq!(v["policy"], "conservative");
}

#[test]
fn info_and_equiv() {
    let dir = tempfile::tempdir().unwrap();
    let u = build(dir.path(), "u.json", &["unknot", "1"]);
    let o = ekd(&["info", &u]);
    assert!(stdout(&o).contains("legendrian: false"), "{}", stdout(&o));
    let o = ekd(&["info", &u, "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["legendrian"], false);
    assert_eq!(stdout(&ekd(&["equiv", &u, &u])).trim(), "equivalent");
    let e = build(dir.path(), "e.json", &["eight", "+", "1"]);
    assert!(stdout(&ekd(&["equiv", &u, &e])).starts_with("not equivalent"));
}

#[test]
fn built_files_match_the_diagram_schema() {
    let dir = tempfile::tempdir().unwrap();
    let v = schema("ekd-v1.schema.json");
    let families: [&[&str]; 6] = [
        &["eight", "-", "3/2"],
        &["trefoil", "-", "1", "1", "1", "2"],
        &["trefoil", "+", "2", "total", "15"],
        &["chain", "-++", "1", "2", "3"],
        &["e", "+", "1", "10"],
        &["unknot", "2"],
    ];
    for (i, f) in families.iter().enumerate() {
        let p = build(dir.path(), &format!("d{i}.json"), f);
        assert_valid(&v, &std::fs::read_to_string(&p).unwrap());
        assert_eq!(ekd(&["validate", &p]).status.code(), Some(0));
    }
    let empty = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/empty.ekd.json");
    assert_valid(&v, &std::fs::read_to_string(empty).unwrap());
}

#[test]
fn search_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let one = build(dir.path(), "e1.json", &["eight", "+", "1"]);
    let two = build(dir.path(), "e2.json", &["eight", "+", "2"]);
    let trace = dir.path().join("t.json");
    let o = ekd(&[
        "search",
        &one,
        &two,
        "--max-depth",
        "1",
        "--json",
        "-o",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = schema("trace.schema.json");
    assert_valid(&v, &stdout(&o));
    assert_valid(&v, &std::fs::read_to_string(&trace).unwrap());
    let out = dir.path().join("end.json");
    let o = ekd(&[
        "replay",
        &one,
        trace.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(
        stdout(&ekd(&["equiv", out.to_str().unwrap(), &two])).trim(),
        "equivalent"
    );

    // replaying onto the wrong start is an input error
    let o = ekd(&["replay", &two, trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));

    let o = ekd(&["search", &two, &one, "--max-depth", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_valid(&v, &stdout(&o));
    assert!(stdout(&o).contains("NOT_FOUND"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let one = build(dir.path(), "e1.json", &["eight", "+", "1"]);
    let c = build(dir.path(), "c.json", &["chain", "-++", "4", "3", "2"]);
    // budget exhausted
    let o = ekd(&["search", &one, &c, "--max-depth", "3", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(4), "{}", stdout(&o));
    // usage
    assert_eq!(ekd(&["search", &one, &c]).status.code(), Some(2));
    assert_eq!(ekd(&["disks", &one, "--big"]).status.code(), Some(2));
    assert_eq!(ekd(&["frobnicate"]).status.code(), Some(2));
    // input
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format\": \"ekd-v1\"").unwrap();
    let o = ekd(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema error"));
    assert_eq!(ekd(&["validate", "/no/such/file"]).status.code(), Some(3));
    assert_eq!(ekd(&["build", "eight", "+", "-1"]).status.code(), Some(3));
    assert_eq!(
        ekd(&["build", "chain", "-++", "1", "3", "1"]).status.code(),
        Some(3)
    );
}

#[test]
fn negative_area_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let one = build(dir.path(), "e1.json", &["eight", "+", "1"]);
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&one).unwrap()).unwrap();
    let outer = v["outer_face"].as_u64().unwrap() as usize;
    let f = if outer == 0 { 1 } else { 0 };
    v["faces"][f]["area"] = "-1/1".into();
    std::fs::write(&one, v.to_string()).unwrap();
    let o = ekd(&["validate", &one]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("positive rationals"));
}

#[test]
fn disks_and_render() {
    let dir = tempfile::tempdir().unwrap();
    let c = build(dir.path(), "c.json", &["chain", "-++", "4", "3", "2"]);
    let e = build(dir.path(), "e.json", &["eight", "+", "1"]);
    let o = ekd(&["disks", &c]);
    assert!(stdout(&o).contains("disk(s)"));
    let o = ekd(&["disks", &c, "--big", "--pair", &e, "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let big = v.as_array().unwrap();
    assert!(!big.is_empty());
    assert!(big
        .iter()
        .all(|d| d["side"] == "upper" || d["side"] == "lower"));
    let svg = dir.path().join("c.svg");
    assert!(ekd(&["render", &c, "-o", svg.to_str().unwrap()])
        .status
        .success());
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.contains("<svg") && text.contains("polyline"));

    // a diagram without layout cannot be drawn
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&e).unwrap()).unwrap();
    v.as_object_mut().unwrap().remove("layout");
    std::fs::write(&e, v.to_string()).unwrap();
    let o = ekd(&["render", &e, "-o", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("no layout"));
}

#[test]
fn corollaries_are_deterministic() {
    let a = ekd(&["corollaries"]);
    let b = ekd(&["corollaries"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).ends_with("105 rows, 0 mismatches\n"));
    let j = ekd(&["corollaries", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&j)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 105);
    assert_eq!(j.stdout, ekd(&["corollaries", "--json"]).stdout);
}

#[test]
fn build_output_flag_after_the_family() {
    let dir = tempfile::tempdir().unwrap();
    let after = dir.path().join("after.json");
    let o = ekd(&[
        "build",
        "chain",
        "-++",
        "4",
        "3",
        "2",
        "-o",
        after.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let before = build(dir.path(), "before.json", &["chain", "-++", "4", "3", "2"]);
    assert_eq!(
        std::fs::read_to_string(&after).unwrap(),
        std::fs::read_to_string(before).unwrap()
    );
    let o = ekd(&["build", "eight", "+", "1", "-o"]);
    assert_eq!(o.status.code(), Some(3));
}
