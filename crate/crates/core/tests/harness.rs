use homquot::corpus::{borel_in_sl2, shipped_corpus, sl2, CorpusEntry, Instance};
use homquot::exalg::FieldSpec;
use homquot::harness::{registry, run_check, run_suite, select_checks, Outcome};
use homquot::{Error, Limits};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

#[test]
fn registry_ids_are_unique() {
    let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    for id in ["R2.9", "T3.10", "L5.8", "C6.8"] {
        assert!(ids.contains(&id));
    }
}

#[test]
fn semiprime_chain_on_sl2() {
    let l = sl2(gf(5));
    let o = run_check("R2.9", &Instance::Algebra(l), &Limits::default()).unwrap();
    assert_eq!(o, Outcome::Pass);
}

#[test]
fn quotient_equivalence_on_borel() {
    let e = borel_in_sl2(gf(5));
    let o = run_check("T3.10", &Instance::Extension(e), &Limits::default()).unwrap();
    assert_eq!(o, Outcome::Pass);
}

#[test]
fn trivial_lattice_passes_at_the_whole_algebra() {
    // sl2 has no proper ideals, so L is the only essential ideal
    let o = run_check("P3.13", &Instance::Algebra(sl2(gf(5))), &Limits::default()).unwrap();
    assert_eq!(o, Outcome::Pass);
}

#[test]
fn unknown_id_is_an_error() {
    let r = run_check("X9.9", &Instance::Algebra(sl2(gf(5))), &Limits::default());
    assert!(matches!(r, Err(Error::UnknownCheck(_))));
    assert!(matches!(
        select_checks("T3.10,nope"),
        Err(Error::UnknownCheck(_))
    ));
}

#[test]
fn filter_yields_one_row() {
    let entries: Vec<CorpusEntry> = shipped_corpus().unwrap().into_iter().take(5).collect();
    let checks = select_checks("T3.10").unwrap();
    let r = run_suite(&entries, &checks, &Limits::default()).unwrap();
    assert_eq!(r.checks.len(), 1);
    assert_eq!(r.checks[0].id, "T3.10");
    let row = &r.checks[0];
    assert_eq!(row.pass + row.fail + row.not_applicable + row.unknown, 5);
}

#[test]
fn empty_corpus_reports_nothing() {
    let checks = select_checks("all").unwrap();
    let r = run_suite(&[], &checks, &Limits::default()).unwrap();
    assert_eq!(r.checks.len(), registry().len());
    assert_eq!(r.fingerprint.instances, 0);
    for row in &r.checks {
        assert_eq!(
            (row.pass, row.fail, row.not_applicable, row.unknown),
            (0, 0, 0, 0)
        );
    }
}

#[test]
fn shipped_corpus_has_no_failures() {
    let entries = shipped_corpus().unwrap();
    let checks = select_checks("all").unwrap();
    let r = run_suite(&entries, &checks, &Limits::default()).unwrap();
    eprint!("{}", r.summary());
    for row in &r.checks {
        for f in &row.failures {
            eprintln!("{} on {}: {}", row.id, f.instance, f.certificate);
        }
    }
    assert_eq!(r.total_fail, 0);
    // every check must actually run somewhere
    for row in &r.checks {
        assert!(
            row.pass > 0,
            "{} never passed: {:?} {:?}",
            row.id,
            row.na_reasons,
            row.unknown_reasons
        );
    }
}
