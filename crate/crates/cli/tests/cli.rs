use std::process::{Command, Output};

fn grc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn d8_norm_in_listed_class_order() {
    let o = grc(&[
        "nr",
        "--group",
        "D8",
        "--element",
        "a",
        "--class-order",
        "1,a^4,a^2,a,a^3,x,a*x",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(
        stdout(&o).contains("nr = (1/4)(3*C1 - C2 - C3 + C4 + C5)"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn zero_adjoint_of_s3() {
    let o = grc(&["adjoint", "--group", "S3", "--zero"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("H*[1,1] = 1/3*1 + 1/3*c + 1/3*c^2"), "{s}");
    assert!(s.contains("|G'| = 3: yes"));
}

#[test]
fn cyclic_classes_are_singletons() {
    let o = grc(&["classes", "--group", "C5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 5);
    assert!(classes.iter().all(|c| c["size"] == 1));
}

#[test]
fn chartab_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("q8.tab");
    let p = path.to_str().unwrap();
    assert_eq!(
        grc(&["chartab", "--group", "Q8", "save", p]).status.code(),
        Some(0)
    );
    let o = grc(&["chartab", "--group", "Q8", "--format", "json", "load", p]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["matches_computed"], true);
    // a table of another group is reported as a violation
    let o = grc(&["chartab", "--group", "C2xC4", "load", p]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn chartab_json_has_all_rows() {
    let o = grc(&["chartab", "--group", "SL2_3", "--format", "json", "compute"]);
    let v = json(&o);
    let degrees: Vec<u64> = v["characters"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degrees, vec![1, 1, 1, 2, 2, 2, 3]);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(grc(&[]).status.code(), Some(2));
    assert_eq!(
        grc(&["nr", "--group", "NoSuchGroup", "--element", "a"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(grc(&["nr", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(
        grc(&["nr", "--group", "S3", "--element", "zz"]).status.code(),
        Some(2)
    );
    assert_eq!(
        grc(&["amodp", "--degrees", "/nonexistent", "--n", "1", "--p", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn group_file_spec() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.grp");
    std::fs::write(&path, "perm 3\n(1 2)\n(1 2 3)\n").unwrap();
    let spec = format!("@{}", path.display());
    let o = grc(&["classes", "--group", &spec, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["order"], 6);
    assert_eq!(json(&o)["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn amodp_s3_degrees() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.deg");
    std::fs::write(&path, "1 2\n2 1\n").unwrap();
    let o = grc(&[
        "amodp",
        "--degrees",
        path.to_str().unwrap(),
        "--n",
        "-1",
        "--p",
        "5,7",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("A(-1) mod 5 = 2"), "{s}");
    assert!(s.contains("A(-1) mod 7 = 2"), "{s}");
}

#[test]
fn probe_is_deterministic_and_clean() {
    let args = [
        "probe", "--group", "Q8", "--trials", "12", "--seed", "5", "--format", "json",
    ];
    let a = grc(&args);
    let b = grc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["violations"].as_array().unwrap().len(), 0);
}

#[test]
fn probe_writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("probe.json");
    let o = grc(&[
        "probe",
        "--group",
        "S3",
        "--trials",
        "4",
        "--prime",
        "3",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, o.stdout);
    assert_eq!(json(&o)["hpg"]["zero_adjoint_p_part"], "3");
}

#[test]
fn witness_outcomes() {
    let o = grc(&["witness", "--group", "C6", "--format", "json"]);
    assert_eq!(json(&o)["outcome"], "abelian");
    let o = grc(&["witness", "--group", "S3"]);
    assert!(stdout(&o).contains("coefficient at x 1/3"));
}

#[test]
fn subgroup_checks() {
    let o = grc(&["restrict-check", "--group", "D8", "a", "--trials", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS restricted-norm").count(), 3);
    let o = grc(&["clifford-check", "--group", "S3", "derived"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
    let o = grc(&["clifford-check", "--group", "S3", "derived", "--chi", "9"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn frobenius_and_ed() {
    let o = grc(&["frobenius", "--group", "Aff5", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v["kernel_order"], 5);
    assert_eq!(v["complement_order"], 4);
    let o = grc(&["frobenius", "--group", "D8"]);
    assert!(stdout(&o).contains("not a Frobenius group"));
    let o = grc(&["ed", "--group", "S3", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["integral"], true);
}

#[test]
fn idempotents_listed() {
    let o = grc(&["idempotents", "--group", "S3", "--format", "json"]);
    assert_eq!(json(&o)["idempotents"].as_array().unwrap().len(), 3);
}

#[test]
fn repro_paper_passes() {
    let o = grc(&["repro-paper"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(!s.contains("FAIL"));
    assert!(s.contains("SKIP monster-residues"));
}
