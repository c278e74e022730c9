//! End-to-end tests driving the compiled binary: exact output rows, the
//! exit-code contract, JSON mirroring, determinism, and `CATALOG_DIR`
//! overrides.

use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_bianchi"));
    c.env_remove("CATALOG_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf8 stderr")
}

const KLEIN_CLAIM: &str = r#"kind claim
src "test fixture"
prime 2
gen y2 deg 2
gen z2 deg 2
gen y3 deg 3
rel y3^2 + y2^2*z2 + y2*z2^2
rep y2 = x1^2 via x1
rep z2 = y1^2 via y1
rep y3 = x1^2*y1 + x1*y1^2 via x1*y1
modp D2.mod2
sq1 D2.sq1
"#;

#[test]
fn poincare_prints_the_dimension_row() {
    let out = run(&["poincare", "D2.mod2", "--up-to", "4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 2 3 4 5\n");
}

#[test]
fn unknown_ids_exit_with_usage_error() {
    let out = run(&["poincare", "missing-id"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown catalog entry"));

    let out = run(&["les", "Nope.tower"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_single_entry_reports_each_check() {
    let out = run(&["verify", "D2.claim.int2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("CHECK D2.claim.int2.rel1 PASS"));
    assert!(text.contains("CHECK D2.claim.int2.uct PASS"));
    assert!(text.contains("0 failures"));
}

#[test]
fn verify_rejects_a_corrupted_relation_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("corrupted.file");
    let broken = KLEIN_CLAIM.replace(
        "rel y3^2 + y2^2*z2 + y2*z2^2",
        "rel y3^2 + y2^2*z2",
    );
    std::fs::write(&path, broken).expect("write fixture");
    let out = run(&["verify", path.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));
}

#[test]
fn verify_locates_syntax_errors() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.cat");
    std::fs::write(&path, "kind algebra\nsrc \"test fixture\"\nfield 2\ngen a deg\n")
        .expect("write fixture");
    let out = run(&["verify", path.to_str().expect("utf8 path")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("FAIL"));
    assert!(text.contains("line 4"));
}

#[test]
fn json_mirrors_the_text_report() {
    let text_out = run(&["verify", "D2.claim.int2"]);
    let json_out = run(&["verify", "D2.claim.int2", "--format", "json"]);
    assert!(json_out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&json_out)).expect("valid json");
    assert_eq!(v["passed"], serde_json::Value::Bool(true));
    assert_eq!(v["failures"].as_u64(), Some(0));
    let lines = v["lines"].as_array().expect("lines array");
    let checks = lines
        .iter()
        .filter(|l| l["kind"] == "check")
        .count();
    assert_eq!(Some(checks as u64), v["checks"].as_u64());
    let text_checks = stdout(&text_out)
        .lines()
        .filter(|l| l.starts_with("CHECK "))
        .count();
    assert_eq!(checks, text_checks);
}

#[test]
fn poincare_json_round_trips() {
    let out = run(&["poincare", "D2.mod2", "--up-to", "4", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid json");
    assert_eq!(v["dims"], serde_json::json!([1, 2, 3, 4, 5]));
    assert_eq!(v["id"], "D2.mod2");
}

#[test]
fn identical_invocations_are_byte_identical() {
    let a = run(&["les", "AfZtAf.tower", "--up-to", "10"]);
    let b = run(&["les", "AfZtAf.tower", "--up-to", "10"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let a = run(&["verify", "Gamma5.claim.int2", "--up-to", "12"]);
    let b = run(&["verify", "Gamma5.claim.int2", "--up-to", "12"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn tower_ids_resolve_with_the_prime_flag() {
    let out = run(&["les", "Gamma3.tower", "--prime", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("no stages to assemble"));

    let out = run(&["les", "AfZtAf.tower", "--up-to", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("H^3 = Z/2 + Z/4"));
    assert!(text.contains("nonsplit form Z/4"));
}

#[test]
fn catalog_dir_overrides_the_builtin_set() {
    let dir = tempfile::tempdir().expect("tempdir");
    std::fs::write(
        dir.path().join("trivial.mod2.cat"),
        "kind algebra\nsrc \"test fixture\"\nfield 2\ngen t1 deg 1\n",
    )
    .expect("write fixture");

    let out = bin()
        .args(["poincare", "trivial.mod2", "--up-to", "3"])
        .env("CATALOG_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 1 1 1\n");

    let out = bin()
        .args(["poincare", "D2.mod2"])
        .env("CATALOG_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn catalog_dir_missing_dependency_is_reported() {
    let dir = tempfile::tempdir().expect("tempdir");
    std::fs::write(
        dir.path().join("broken.hom.cat"),
        "kind hom\nsrc \"test fixture\"\nsource ghost.mod2\ntarget ghost.mod2\n",
    )
    .expect("write fixture");

    let out = bin()
        .args(["catalog", "list"])
        .env("CATALOG_DIR", dir.path())
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ghost.mod2"));
}

#[test]
fn bockstein_row_for_the_polynomial_ring() {
    let out = run(&["bockstein", "PSL2Z.sq1", "--up-to", "6"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "1 0 0 0 0 0 0\n");
}

#[test]
fn kernel_rows_for_a_restriction() {
    let out = run(&["kernel", "res.A4.Z2.mod2", "--up-to", "3"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "deg 0: kernel 0, image 1\ndeg 1: kernel 0, image 0\ndeg 2: kernel 0, image 1\ndeg 3: kernel 1, image 1\n"
    );
}

#[test]
fn sq1_lists_generator_images() {
    let out = run(&["sq1", "D2.sq1", "--up-to", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("d x1 = x1^2"));
    assert!(text.contains("d y1 = y1^2"));
    assert!(text.contains("deg 1: dim 2, kernel 0, image 2"));
}

#[test]
fn verify_all_passes_on_the_builtin_catalog() {
    let out = run(&["verify", "all", "--up-to", "8"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains(", 0 failures"));
}
