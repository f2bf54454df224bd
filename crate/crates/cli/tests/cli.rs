use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homquot"))
        .args(args)
        .output()
        .unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn shipped(name: &str) -> String {
    let p: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name);
    p.to_str().unwrap().to_string()
}

#[test]
fn check_reports_axioms() {
    let o = bin(&["check", &shipped("sl2_gf5.alg.json")]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    assert_eq!(d["hom_axioms_hold"], true);
    assert_eq!(d["report"]["classical_jacobi"]["value"], "true");
    assert!(!o.stderr.is_empty());
}

#[test]
fn check_rejects_a_broken_algebra() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.alg.json");
    // [e1,e2] = e1, [e2,e3] = e2 with α = id breaks Jacobi
    let doc = r#"{"field": {"kind": "prime", "p": 3}, "dim": 3,
        "bracket": [{"i": 0, "j": 1, "value": ["1","0","0"]}, {"i": 1, "j": 2, "value": ["0","1","0"]}],
        "alpha": [["1","0","0"],["0","1","0"],["0","0","1"]]}"#;
    fs::write(&p, doc).unwrap();
    let o = bin(&["check", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["report"]["hom_jacobi"]["value"], "false");
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("junk.json");
    fs::write(&p, "{not json").unwrap();
    assert_eq!(bin(&["check", p.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(
        bin(&["check", "/nonexistent/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn analyze_modes() {
    let o = bin(&["analyze", &shipped("sl2_gf5.alg.json")]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    assert_eq!(d["semiprime"]["value"], "true");
    assert_eq!(d["prime"]["value"], "true");
    assert_eq!(d["annihilator"].as_array().unwrap().len(), 0);
    assert_eq!(d["minimum_essential_ideal"].as_array().unwrap().len(), 3);

    let o = bin(&[
        "analyze",
        "--mode",
        "exhaustive",
        &shipped("sl2_Q.alg.json"),
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["analyze", &shipped("sl2_Q.alg.json")]);
    assert_eq!(json(&o)["semiprime"]["value"], "true");
}

#[test]
fn quotients_on_borel() {
    let o = bin(&["quotients", &shipped("borel_in_sl2.ext.json")]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    assert_eq!(d["quotient"]["value"], "false");
    assert_eq!(d["ideally_absorbed"]["value"], "false");
    assert_eq!(d["weak_quotient"]["value"], "true");
    assert_eq!(d["agreement"], true);
}

#[test]
fn maxq_writes_the_carrier() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let o = bin(&[
        "maxq",
        &shipped("sl2_gf5.alg.json"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(d["dim"], 3);
    assert_eq!(d["phi_bijective"], true);
    assert_eq!(d, json(&o));

    let o = bin(&["maxq", &shipped("abelian_3.alg.json")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn envelope_dimensions() {
    let o = bin(&["envelope", &shipped("borel_in_sl2.ext.json")]);
    assert_eq!(o.status.code(), Some(0));
    let d = json(&o);
    assert_eq!(d["a_q"]["dim"], 9);
    assert!(d["left_quotient_a0_in_a_q"].get("not_applicable").is_some());
}

#[test]
fn gen_is_seed_stable() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let o = bin(&[
            "gen",
            "--strategy",
            "lie-with-scalar-twist",
            "--dim",
            "3",
            "--field",
            "gf3",
            "--seed",
            "7",
            "--count",
            "3",
            "--kind",
            "extension",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        out
    };
    let (a, b) = (run("a"), run("b"));
    let names = |d: &Path| {
        let mut v: Vec<String> = fs::read_dir(d)
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        v.sort();
        v
    };
    assert_eq!(names(&a), names(&b));
    assert_eq!(names(&a).len(), 4);
    for n in names(&a) {
        assert_eq!(
            fs::read(a.join(&n)).unwrap(),
            fs::read(b.join(&n)).unwrap(),
            "{n}"
        );
    }

    let o = bin(&[
        "gen",
        "--strategy",
        "lie-with-scalar-twist",
        "--dim",
        "3",
        "--field",
        "gf4",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn harness_filter_and_unknown_ids() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("c");
    let o = bin(&[
        "gen",
        "--strategy",
        "lie-with-identity-twist",
        "--dim",
        "3",
        "--field",
        "gf2",
        "--seed",
        "1",
        "--count",
        "4",
        "--out",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = dir.path().join("r.json");
    let o = bin(&[
        "harness",
        corpus.to_str().unwrap(),
        "--checks",
        "R2.9,T4.4",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let d: Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let ids: Vec<&str> = d["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["id"].as_str().unwrap())
        .collect();
    assert_eq!(ids, ["R2.9", "T4.4"]);
    assert_eq!(d["fingerprint"]["instances"], 4);

    let o = bin(&[
        "harness",
        corpus.to_str().unwrap(),
        "--checks",
        "Z1.1",
        "--out",
        report.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}
