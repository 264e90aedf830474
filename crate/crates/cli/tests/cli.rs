use assert_cmd::Command;
use predicates::prelude::*;

fn cliffsub() -> Command {
    let mut c = Command::cargo_bin("cliffsub").unwrap();
    c.env_remove("CLIFFSUB_CACHE_DIR");
    c
}

fn stdout_of(args: &[&str]) -> String {
    let out = cliffsub().args(args).output().unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn hierarchy_of_eighth_root_phase_gate() {
    cliffsub().args(["hierarchy", "Ph8⊗I"]).assert().success().stdout("3\n");
}

#[test]
fn hierarchy_reports_bound_for_exotic_gate() {
    cliffsub().args(["--max-level", "3", "hierarchy", "PHI I"]).assert().success().stdout("NotWithin(3)\n");
}

#[test]
fn describe_pauli_bell_group() {
    cliffsub()
        .args(["describe", "⟨P2,BELL⟩"])
        .assert()
        .success()
        .stdout(predicate::str::contains("320=80σ"))
        .stdout(predicate::str::contains("entangling"))
        .stdout(predicate::str::contains("irreducible:      true"));
}

#[test]
fn describe_json_is_a_report() {
    let text = stdout_of(&["--format", "json", "describe", "C(80σ)"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["order"], 320);
    assert_eq!(v["projective_order"], 80);
    assert_eq!(v["lift"], "σ");
}

#[test]
fn verify_family_s4() {
    cliffsub()
        .args(["verify", "--family", "monomial-s4"])
        .assert()
        .success()
        .stdout(predicate::str::contains("6/6 entries verified"));
}

#[test]
fn verify_series_instance() {
    cliffsub().args(["verify", "S4[2]", "QxQ[2,3]"]).assert().success().stdout(predicate::str::contains("2/2"));
}

#[test]
fn wrong_expected_order_fails_with_diff() {
    cliffsub()
        .args(["verify", "C2", "--expect-order", "1"])
        .assert()
        .code(1)
        .stdout(predicate::str::contains("FAIL C2"))
        .stdout(predicate::str::contains("order: expected 1, computed 46080"));
}

#[test]
fn usage_errors_exit_two() {
    cliffsub().args(["verify", "no-such-group"]).assert().code(2);
    cliffsub().args(["verify"]).assert().code(2);
    cliffsub().args(["--cap", "0", "verify", "P2"]).assert().code(2);
    cliffsub().args(["--max-level", "0", "hierarchy", "XI"]).assert().code(2);
    cliffsub().args(["verify", "--family", "nonsense"]).assert().code(2);
    cliffsub().args(["hierarchy", "XI·"]).assert().code(2);
}

#[test]
fn cap_exhaustion_exits_three() {
    cliffsub()
        .args(["--cap", "10", "verify", "P2"])
        .assert()
        .code(3)
        .stdout(predicate::str::contains("more than 10 elements"));
}

#[test]
fn csv_export_has_header_and_56_rows_and_is_stable() {
    let a = stdout_of(&["export", "csv"]);
    let b = stdout_of(&["export", "csv"]);
    assert_eq!(a, b);
    let mut r = csv::Reader::from_reader(a.as_bytes());
    assert_eq!(r.headers().unwrap().iter().collect::<Vec<_>>(), ["class", "name", "gates", "order", "projective_id"]);
    let rows: Vec<_> = r.records().map(|x| x.unwrap()).collect();
    assert_eq!(rows.len(), 56);
    assert!(rows.iter().any(|r| &r[1] == "C2" && &r[3] == "46080=11520σ"));
}

#[test]
fn export_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("atlas.g");
    cliffsub().args(["export", "gap"]).arg(&path).assert().success();
    let script = std::fs::read_to_string(&path).unwrap();
    assert!(script.contains("MatchesId"));
    assert!(script.contains("Check(\"Ex(25920τ)\""));
}

#[test]
fn verify_csv_and_json_formats() {
    let text = stdout_of(&["--format", "csv", "verify", "P2", "C1⊗C1"]);
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().all(|l| l.contains("PASS") || l.starts_with("name,")));
    let json = stdout_of(&["--format", "json", "--jobs", "1", "verify", "P2"]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v[0]["report"]["order"], 32);
    assert_eq!(v[0]["diffs"].as_array().unwrap().len(), 0);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    cliffsub().args(["--cache", d, "verify", "P2"]).assert().success();
    let listed = stdout_of(&["--cache", d, "cache", "list"]);
    assert_eq!(listed.lines().count(), 1);
    assert!(listed.contains(".json ") && listed.trim_end().ends_with(" bytes"));
    cliffsub().args(["--cache", d, "verify", "P2"]).assert().success();
    cliffsub().env("CLIFFSUB_CACHE_DIR", d).args(["cache", "clear"]).assert().success().stdout("removed 1 entries\n");
    cliffsub().args(["cache", "list"]).assert().code(2);
}
