use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn impactum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_impactum")).args(args).output().unwrap()
}

fn s(p: &Path) -> String {
    p.to_str().unwrap().to_string()
}

fn synth(dir: &Path) -> PathBuf {
    let out = dir.join("corpus");
    let o = impactum(&["synth", "--n-journals", "24", "--n-papers", "2500", "--seed", "5", "--bare-rate", "0.02", "--out", &s(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn compute_then_compare() {
    let tmp = tempfile::tempdir().unwrap();
    let c = synth(tmp.path());
    let f = |n: &str| s(&c.join(n));
    let computed = tmp.path().join("computed");
    let o = impactum(&[
        "compute", "--papers", &f("papers.jsonl"), "--journals", &f("journals.jsonl"), "--edges", &f("edges.jsonl"),
        "--years", "2023,2024", "--out", &s(&computed),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(computed.join("indicators.csv")).unwrap();
    assert!(csv.starts_with("journal_id,year,n_pubs,i3,i3_n,jif,citescore,h,i10,h5,citations\n"));
    assert_eq!(csv.lines().count(), 1 + 2 * 24);

    let manifest: Value = serde_json::from_slice(&std::fs::read(computed.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["command"], "compute");
    assert_eq!(manifest["config"]["weights"], serde_json::json!([100, 10, 2, 0]));
    assert_eq!(manifest["inputs"].as_array().unwrap().len(), 3);
    assert!(manifest["notes"]["resolution"]["edges_resolved"].as_u64().unwrap() > 0);

    let compared = tmp.path().join("compared");
    let o = impactum(&[
        "compare", "--indicators", &s(&computed.join("indicators.csv")), "--journals", &f("journals.jsonl"),
        "--subjects", &f("subjects.csv"), "--years", "2023,2024", "--crosswalk-threshold", "2",
        "--min-publisher-journals", "2", "--out", &s(&compared),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    for file in ["descriptives.csv", "concordance.csv", "ecdf_diff.csv", "publisher_shift.csv", "subject_trends.csv", "rank_quartiles_2024.csv"] {
        assert!(compared.join(file).exists(), "{file}");
    }
    let shifts = std::fs::read_to_string(compared.join("publisher_shift.csv")).unwrap();
    assert!(shifts.lines().count() > 1);
}

#[test]
fn jsonl_output_and_class_dump() {
    let tmp = tempfile::tempdir().unwrap();
    let c = synth(tmp.path());
    let out = tmp.path().join("o");
    let o = impactum(&[
        "compute", "--papers", &s(&c.join("papers.jsonl")), "--journals", &s(&c.join("journals.jsonl")),
        "--year", "2024", "--dump-classes", "--format", "jsonl", "--out", &s(&out),
    ]);
    assert!(o.status.success());
    let first = std::fs::read_to_string(out.join("indicators.jsonl")).unwrap();
    let row: Value = serde_json::from_str(first.lines().next().unwrap()).unwrap();
    assert!(row["n_pubs"].is_u64());
    let classes = std::fs::read_to_string(out.join("classes_2024.jsonl")).unwrap();
    assert!(classes.lines().count() > 100);
}

#[test]
fn exit_codes() {
    assert_eq!(impactum(&["--version"]).status.code(), Some(0));
    assert_eq!(impactum(&["compute"]).status.code(), Some(1));
    let tmp = tempfile::tempdir().unwrap();
    let c = synth(tmp.path());
    let bad_weights = impactum(&[
        "compute", "--papers", &s(&c.join("papers.jsonl")), "--journals", &s(&c.join("journals.jsonl")),
        "--year", "2024", "--weights", "1,2,3,4", "--out", &s(&tmp.path().join("w")),
    ]);
    assert_eq!(bad_weights.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&bad_weights.stderr);
    assert_eq!(stderr.trim().lines().count(), 1);
    assert!(stderr.starts_with("error[usage]"));

    let missing = impactum(&[
        "compute", "--papers", &s(&tmp.path().join("nope.jsonl")), "--journals", &s(&c.join("journals.jsonl")),
        "--year", "2024", "--out", &s(&tmp.path().join("m")),
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(!tmp.path().join("m").exists());

    let garbage = tmp.path().join("garbage.csv");
    std::fs::write(&garbage, "not,an,indicator,table\n1,2,3,4\n").unwrap();
    let o = impactum(&["compare", "--indicators", &s(&garbage), "--years", "2023,2024", "--out", &s(&tmp.path().join("g"))]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let tmp = tempfile::tempdir().unwrap();
    let o = impactum(&["selftest", "--out", &s(&tmp.path().join("st"))]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let table = std::fs::read_to_string(tmp.path().join("st/selftest.csv")).unwrap();
    assert!(table.lines().skip(1).all(|l| l.ends_with(",0")));
}
