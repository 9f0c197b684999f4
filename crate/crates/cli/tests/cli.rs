use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fujiki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fujiki"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tsv(o: &Output) -> BTreeMap<String, String> {
    stdout(o)
        .lines()
        .filter_map(|l| l.split_once('\t'))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn fixture(rel: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(rel);
    p.to_str().unwrap().to_string()
}

#[test]
fn bound_examples() {
    let o = fujiki(&["bound", "--coeffs", "1/4,3/2,17/8", "--n", "2"]);
    assert!(o.status.success());
    assert_eq!(tsv(&o)["bound"], "16");
    let o = fujiki(&["bound", "--mu", "16/3", "--n", "2"]);
    assert_eq!(tsv(&o)["bound"], "8");
}

#[test]
fn rr_eval() {
    let o = fujiki(&["rr", "--type", "k3n", "--n", "2", "--eval", "2"]);
    assert!(o.status.success());
    assert_eq!(tsv(&o)["eval"], "6");
}

#[test]
fn fujiki_from_rr_matches_nikulin_orbifold() {
    let o = fujiki(&["fujiki", "--n", "2", "--from-rr", "1/4,3/2,17/8"]);
    let t = tsv(&o);
    assert_eq!(t["C(c4)"], "198");
    assert_eq!(t["C(c2^2)"], "576");
    assert_eq!(t["hitchin_sawon_residual"], "0");
}

#[test]
fn tsv_and_json_carry_the_same_pairs() {
    for args in [
        vec!["rr", "--type", "kumn", "--n", "3"],
        vec!["catalog", "--name", "og6", "--verify"],
        vec!["enumerate", "--what", "betti"],
    ] {
        let t = tsv(&fujiki(&args));
        let mut j = args.clone();
        j.extend(["--format", "json"]);
        let json: BTreeMap<String, String> = serde_json::from_str(&stdout(&fujiki(&j))).unwrap();
        assert_eq!(t, json, "{args:?}");
    }
}

#[test]
fn approx_adds_a_column() {
    let o = fujiki(&["bound", "--mu", "16/3", "--n", "2", "--approx"]);
    let line = stdout(&o)
        .lines()
        .find(|l| l.starts_with("mu\t"))
        .unwrap()
        .to_string();
    assert_eq!(line.split('\t').count(), 3, "{line}");
}

#[test]
fn orbifold_profiles() {
    let o = fujiki(&[
        "orbifold",
        "derive",
        "--profile",
        &fixture("orbifolds/m_prime.json"),
    ]);
    assert!(o.status.success());
    let t = tsv(&o);
    assert_eq!(
        (
            t["C(c4)"].as_str(),
            t["C(td4)"].as_str(),
            t["bound"].as_str()
        ),
        ("198", "17/8", "16")
    );
    let o = fujiki(&[
        "orbifold",
        "derive",
        "--profile",
        &fixture("orbifolds/k4_prime.json"),
    ]);
    let t = tsv(&o);
    assert_eq!(t["C(c2)"], "10*sqrt(C1)");
    assert_eq!(t["bound"], "8");
}

#[test]
fn k4_appendix() {
    let o = fujiki(&["reproduce", "--only", "appendix-k4"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("PASS  appendix-k4"));
    assert!(stdout(&o).contains("(36, 8, 24, 30, 66, 45, 15/16, 240)"));
    let t = tsv(&fujiki(&["orbifold", "k4-appendix"]));
    assert_eq!(t["appendix-k4.chi"], "66");
}

#[test]
fn catalog_checks_pass() {
    let o = fujiki(&[
        "catalog",
        "--name",
        "og10",
        "--verify",
        "--solve-og10",
        "--conjectures",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let t = tsv(&o);
    assert_eq!(t["solved.mu5"], "27/2560");
    assert_eq!(t["ch4_over_C1"], "10/21");
}

#[test]
fn genus_prints_polynomial() {
    let o = fujiki(&["genus", "--class", "td-half", "--k", "2"]);
    assert_eq!(stdout(&o), "7/5760 * c2^2\n-1/1440 * c4\n");
}

#[test]
fn graphs_verify() {
    for which in ["basic", "sawon"] {
        assert!(
            fujiki(&["graphs", "--verify", which]).status.success(),
            "{which}"
        );
    }
    assert!(fujiki(&["graphs", "--verify", "wheeling", "--n", "3"])
        .status
        .success());
    assert_eq!(
        fujiki(&["graphs", "--verify", "wheeling", "--n", "5"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn exit_codes() {
    assert_eq!(
        fujiki(&["reproduce", "--only", "nope"]).status.code(),
        Some(2)
    );
    assert_eq!(
        fujiki(&["rr", "--type", "k3n", "--n", "2", "--eval", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(fujiki(&["catalog", "--name", "og8"]).status.code(), Some(2));
    assert_eq!(
        fujiki(&["orbifold", "derive", "--profile", "/no/such/file.json"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fujiki(&["bound", "--coeffs", "-1,0,0", "--n", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        fujiki(&["genus", "--class", "td", "--k", "40"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn corrupted_fixture_names_first_failing_check() {
    let dir = std::env::temp_dir().join(format!("fujiki-fx-{}", std::process::id()));
    fs::create_dir_all(dir.join("orbifolds")).unwrap();
    let good = fs::read_to_string(fixture("orbifolds/m_prime.json")).unwrap();
    let bad = good.replacen("\"b2\": 16", "\"b2\": 15", 1).replacen(
        "\"chi_top\": 212",
        "\"chi_top\": 200",
        1,
    );
    assert_ne!(good, bad);
    fs::write(dir.join("orbifolds/m_prime.json"), bad).unwrap();
    let o = fujiki(&[
        "reproduce",
        "--only",
        "orbifolds",
        "--fixtures",
        dir.to_str().unwrap(),
    ]);
    fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8_lossy(&o.stderr).to_string();
    assert!(err.contains("orbifolds"), "{err}");
    assert!(stdout(&o).starts_with("FAIL  orbifolds"));
}
