use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_branchcover"))
        .args(args)
        .env_remove("BRANCHCOVER_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn group_info_reports_quaternion_table() {
    let v = json(&["group", "info", "quaternion8"]);
    assert_eq!(v["order"], 8);
    assert_eq!(v["class_count"], 5);
    let chars = v["characters"].as_array().unwrap();
    let two_dim: Vec<_> = chars.iter().filter(|c| c["degree"] == 2).collect();
    assert_eq!(two_dim.len(), 1);
    assert_eq!(two_dim[0]["indicator"], -1);
}

#[test]
fn thirty_one_five_has_non_special_classes() {
    let v = json(&["covers", "classify", "metacyclic:q=31,n=5"]);
    let classes = v["classes"].as_array().unwrap();
    assert!(!classes.is_empty());
    let main: Vec<_> = classes
        .iter()
        .filter(|c| c["local_monodromy"] == serde_json::json!([5, 5, 5]))
        .collect();
    assert!(!main.is_empty());
    assert!(main.iter().all(|c| c["N"] == 3));
}

#[test]
fn seven_three_cm_type() {
    let o = run(&["covers", "cm", "metacyclic:q=7,n=3"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("Q(zeta_7) {1,2,4}"), "{out}");
    assert!(out.contains("verified by matrices: true"), "{out}");
}

#[test]
fn explicit_datum_is_accepted() {
    let v = json(&["covers", "cm", "quaternion8", "--ssg", "i,j,-k"]);
    assert_eq!(v["status"], "cm");
    assert_eq!(v["verified_by_matrices"], true);
}

#[test]
fn exit_codes() {
    // n must divide q − 1.
    assert_eq!(
        run(&["group", "info", "metacyclic:q=7,n=4"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["group", "info", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        run(&["covers", "cm", "quaternion8", "--ssg", "i,i,i"])
            .status
            .code(),
        Some(2)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_branchcover"))
        .args(["group", "info", "cyclic:n=64"])
        .env("BRANCHCOVER_MAX_ORDER", "32")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn file_groups_match_family_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c6.json");
    let mul: Vec<Vec<usize>> = (0..6)
        .map(|i| (0..6).map(|j| (i + j) % 6).collect())
        .collect();
    std::fs::write(
        &path,
        serde_json::json!({ "order": 6, "mul": mul }).to_string(),
    )
    .unwrap();
    let spec = format!("file:{}", path.display());
    let from_file = json(&["covers", "classify", &spec]);
    let family = json(&["covers", "classify", "cyclic:n=6"]);
    assert_eq!(
        from_file["classes"].as_array().unwrap().len(),
        family["classes"].as_array().unwrap().len()
    );
    assert_eq!(from_file["ssg_count"], family["ssg_count"]);
}

fn scan(out: &Path) -> serde_json::Value {
    json(&[
        "scan",
        "--family",
        "metacyclic",
        "--q-max",
        "13",
        "--n-max",
        "4",
        "--out",
        out.to_str().unwrap(),
    ])
}

#[test]
fn scan_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.jsonl");
    let first = scan(&out);
    assert!(first["new_records"].as_u64().unwrap() > 0);
    assert_eq!(first["new_records"], first["classes"]);
    let written = std::fs::read_to_string(&out).unwrap();
    let second = scan(&out);
    assert_eq!(second["new_records"], 0);
    assert_eq!(second["classes"], first["classes"]);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), written);
    for line in written.lines() {
        let rec: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(rec["spec"].as_str().unwrap().starts_with("metacyclic:"));
        assert_eq!(rec["special"], rec["N"] == 0);
    }
}

#[test]
fn scan_rejects_oversized_range_before_writing() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.jsonl");
    let o = Command::new(env!("CARGO_BIN_EXE_branchcover"))
        .args(["scan", "--family", "dicyclic", "--q-max", "31", "--out"])
        .arg(&out)
        .env("BRANCHCOVER_MAX_ORDER", "40")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(!out.exists());
}
