//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use homquot::corpus::{borel_in_sl2, load_corpus, sl2, CorpusEntry, Instance};
use homquot::exalg::{FieldSpec, Matrix, Scalar, ScanOrder, Subspace};
use homquot::harness::{run_suite, select_checks, HarnessReport};
use homquot::homlie::HomLieAlgebra;
use homquot::maxq;
use homquot::quotients::{self, Extension};
use homquot::verdict::Witness;
use homquot::{Limits, Mode};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn corpus() -> Vec<CorpusEntry> {
    load_corpus(&corpus_dir()).expect("shipped corpus loads")
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn ambient(e: &CorpusEntry) -> &HomLieAlgebra {
    match &e.instance {
        Instance::Algebra(l) => l,
        Instance::Extension(x) => x.ambient(),
    }
}

fn small_finite(e: &CorpusEntry) -> bool {
    matches!(ambient(e).field().modulus(), Some(2 | 3))
}

fn curated(e: &CorpusEntry) -> bool {
    e.meta.strategy.as_deref() == Some("curated")
}

fn strs(v: &[&str]) -> Value {
    Value::Array(v.iter().map(|s| Value::String(s.to_string())).collect())
}

fn run_bin(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_homquot"))
        .args(args)
        .output()
        .expect("binary runs");
    let doc = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap_or(-1), doc)
}

fn suite(entries: &[CorpusEntry], ids: &str) -> HarnessReport {
    let checks = select_checks(ids).unwrap();
    run_suite(entries, &checks, &Limits::default()).unwrap()
}

/// Zero Fail and at least one Pass per row; the counts go into the line.
fn rows_clean(r: &HarnessReport) -> Outcome {
    let mut parts = Vec::new();
    for row in &r.checks {
        ensure!(
            row.fail == 0,
            "{} failed on {:?}",
            row.id,
            row.failures.iter().map(|f| &f.instance).collect::<Vec<_>>()
        );
        ensure!(row.pass > 0, "{} never ran: {:?}", row.id, row.na_reasons);
        parts.push(format!(
            "{} pass {} n/a {} unknown {}",
            row.id, row.pass, row.not_applicable, row.unknown
        ));
    }
    Ok(parts.join("; "))
}

fn c1() -> Outcome {
    let path = corpus_dir().join("ex2_5.alg.json");
    let (code, doc) = run_bin(&["check", path.to_str().unwrap()]);
    ensure!(code == 0, "check exited with {code}");
    let r = &doc["report"];
    ensure!(
        r["hom_jacobi"]["value"] == "true",
        "Hom-Jacobi: {}",
        r["hom_jacobi"]
    );
    ensure!(
        r["multiplicative"]["value"] == "true",
        "multiplicativity: {}",
        r["multiplicative"]
    );
    let cj = &r["classical_jacobi"];
    ensure!(cj["value"] == "false", "classical Jacobi: {cj}");
    // basis indices are 0-based: (e2, e3, e4)
    ensure!(
        cj["witness"]["indices"] == serde_json::json!([1, 2, 3]),
        "witness {}",
        cj["witness"]
    );
    ensure!(
        cj["witness"]["defect"] == strs(&["0", "-1", "0", "0"]),
        "defect {}",
        cj["witness"]["defect"]
    );
    Ok("witness (e2,e3,e4), defect -e2".into())
}

fn c2() -> Outcome {
    let entries = corpus();
    let ex = entries
        .iter()
        .find(|e| e.meta.name == "ex2_5")
        .ok_or("ex2_5 missing")?;
    let l = ambient(ex);
    ensure!(l.dim() == 4, "ex2_5 has dim {}", l.dim());
    ensure!(
        l.annihilator(&l.full_space()).unwrap() == l.full_space(),
        "Ann(ex2_5) ≠ L"
    );
    ensure!(
        l.annihilator(&l.zero_space()).unwrap() == l.full_space(),
        "Ann(0) ≠ L"
    );
    // oracle: [x, α(y)] on basis pairs
    for i in 0..4 {
        for j in 0..4 {
            let b = l.bracket_vec(&l.unit(i), &l.twist_vec(&l.unit(j)));
            ensure!(
                b.iter().all(Scalar::is_zero),
                "[e{}, α(e{})] ≠ 0",
                i + 1,
                j + 1
            );
        }
    }
    for f in [gf(5), FieldSpec::rational()] {
        let s = sl2(f);
        ensure!(
            s.annihilator(&s.full_space()).unwrap().is_zero(),
            "Ann(sl2) ≠ 0 over {}",
            f.describe()
        );
        ensure!(
            s.annihilator(&s.zero_space()).unwrap() == s.full_space(),
            "Ann_sl2(0) ≠ L"
        );
    }
    Ok("Ann(ex2_5) = L, Ann(sl2) = 0, Ann(0) = L".into())
}

fn c3() -> Outcome {
    let lim = Limits::default();
    let entries = corpus();
    let mut n = 0;
    let mut strategies = BTreeSet::new();
    let (mut t, mut f, mut derived_agree) = (0, 0, 0);
    for e in &entries {
        let Instance::Extension(x) = &e.instance else {
            continue;
        };
        let Some(strategy) = &e.meta.strategy else {
            continue;
        };
        if curated(e) || !small_finite(e) || x.ambient().dim() > 4 {
            continue;
        }
        n += 1;
        strategies.insert(strategy.clone());
        let q = quotients::is_quotient_algebra(x, Mode::Exhaustive, &lim).unwrap();
        let a = quotients::is_ideally_absorbed(x, Mode::Exhaustive, &lim).unwrap();
        ensure!(
            !q.is_unknown() && !a.is_unknown(),
            "{}: undecided",
            e.meta.name
        );
        ensure!(
            q.value == a.value,
            "{}: quotient {} vs absorbed {}",
            e.meta.name,
            q.value,
            a.value
        );
        if q.is_true() {
            t += 1;
        } else {
            f += 1;
        }
        let d = quotients::quotient_derived(x, &lim).unwrap();
        if !d.is_unknown() {
            ensure!(
                d.value == q.value,
                "{}: derived {} vs exhaustive {}",
                e.meta.name,
                d.value,
                q.value
            );
            derived_agree += 1;
        }
    }
    ensure!(n >= 200, "only {n} generated extensions");
    ensure!(strategies.len() >= 2, "strategies {strategies:?}");
    ensure!(t > 0 && f > 0, "true {t} false {f}");
    Ok(format!(
        "{n} extensions over {} strategies, {t} true / {f} false, derived decided {derived_agree}",
        strategies.len()
    ))
}

fn in_l(e: &Extension, v: &[Scalar]) -> bool {
    e.in_sub(v)
}

/// All elements of `L` (ambient coordinates).
fn elements(e: &Extension) -> Vec<Vec<Scalar>> {
    let f = e.ambient().field();
    let p = f.modulus().unwrap();
    let k = e.sub().dim();
    let mut out = vec![f.zeros(e.ambient().dim())];
    for b in e.sub().basis() {
        let mut next = Vec::new();
        for v in &out {
            for c in 0..p {
                let s = f.element(c);
                next.push(v.iter().zip(b).map(|(x, y)| x + &(&s * y)).collect());
            }
        }
        out = next;
    }
    debug_assert_eq!(out.len(), (p as usize).pow(k as u32));
    out
}

fn c4() -> Outcome {
    let f5 = gf(5);
    let e = borel_in_sl2(f5);
    let q = e.ambient();
    let v = |xs: [i64; 3]| xs.iter().map(|&x| f5.from_i64(x)).collect::<Vec<_>>();
    let (ev, fv) = (v([1, 0, 0]), v([0, 1, 0]));
    let span_e = Subspace::from_vectors(f5, 3, [ev.clone()]);

    let colon = e.denominator_ideal(&fv).unwrap().colon_in_q;
    ensure!(colon == span_e, "(L:f) computed as {:?}", colon.basis());

    // brute force: _L(q) by closure under [·, L], then (L:q) by trying every x in L
    let ls = elements(&e);
    let lq = |qv: &[Scalar]| -> Subspace {
        let mut s = Subspace::from_vectors(f5, 3, [qv.to_vec()]);
        loop {
            let mut vs = s.basis_vectors();
            for w in s.basis() {
                for b in e.sub().basis() {
                    vs.push(q.bracket_vec(w, b));
                }
            }
            let t = Subspace::from_vectors(f5, 3, vs);
            if t == s {
                return s;
            }
            s = t;
        }
    };
    let colon_bf = |qv: &[Scalar]| -> Vec<Vec<Scalar>> {
        let w = lq(qv);
        ls.iter()
            .filter(|x| {
                w.basis()
                    .iter()
                    .all(|y| in_l(&e, &q.bracket_vec(x, &q.twist_vec(y))))
            })
            .cloned()
            .collect()
    };
    ensure!(
        Subspace::from_vectors(f5, 3, colon_bf(&fv)) == span_e,
        "brute-force (L:f) differs"
    );

    // brute-force double scan in the library's scan order
    let order = ScanOrder::full(f5, 3, 1000).unwrap();
    let mut first = None;
    'outer: for qv in order.iter() {
        let col = colon_bf(&qv);
        for pv in order.iter() {
            let tp = q.twist_vec(&pv);
            if col
                .iter()
                .all(|x| q.bracket_vec(x, &tp).iter().all(Scalar::is_zero))
            {
                first = Some((pv, qv));
                break 'outer;
            }
        }
    }
    let (p0, q0) = first.ok_or("brute force finds no witness")?;
    ensure!(p0 == ev && q0 == fv, "brute-force witness ({p0:?}, {q0:?})");

    let vd = quotients::is_quotient_algebra(&e, Mode::Exhaustive, &Limits::default()).unwrap();
    ensure!(vd.is_false(), "is_quotient_algebra = {}", vd.value);
    ensure!(
        vd.witness == Some(Witness::Pair { p: ev, q: fv }),
        "witness {:?}",
        vd.witness
    );
    Ok("(L:f) = span{e}, witness (p,q) = (e,f)".into())
}

fn c5() -> Outcome {
    let lim = Limits::default();
    for f in [gf(5), FieldSpec::rational()] {
        let s = sl2(f);
        let mq = maxq::build_maximal_quotients(&s, &lim).map_err(|e| e.to_string())?;
        let name = f.describe();
        ensure!(mq.dim() == 3, "{name}: carrier dim {}", mq.dim());
        ensure!(mq.phi_is_bijective(), "{name}: φ not bijective");
        ensure!(
            mq.carrier.check_axioms().hom_axioms_hold(),
            "{name}: carrier axioms"
        );
        let c = &mq.carrier;
        for i in 0..3 {
            let x = s.unit(i);
            let px = mq.phi_of(&x);
            // α̃(φx) = φ(αx) and α̃(δ) = α∘δ
            ensure!(
                c.twist_vec(&px) == mq.phi_of(&s.twist_vec(&x)),
                "{name}: α̃ φ ≠ φ α"
            );
            let d = mq.element(&c.unit(i)).matrix;
            let ad = mq.element(&c.twist_vec(&c.unit(i))).matrix;
            ensure!(ad == s.alpha().mul(&d), "{name}: α̃ ≠ α∘δ on basis {i}");
            for j in 0..3 {
                let y = s.unit(j);
                let py = mq.phi_of(&y);
                let target = mq.phi_of(&s.twist_vec(&s.bracket_vec(&x, &y)));
                ensure!(
                    c.bracket_vec(&px, &py) == target,
                    "{name}: [φx, φy] ≠ φ(α[x,y])"
                );
                // the commutator of the maps themselves, on I_min
                let (ax, ay) = (s.ad(&x).unwrap(), s.ad(&y).unwrap());
                let comm = ax.mul(&ay).sub(&ay.mul(&ax)).mul(&mq.i_min.embedding());
                ensure!(
                    comm == mq.element(&target).matrix,
                    "{name}: commutator of maps"
                );
            }
        }
    }
    Ok("GF(5) and Q: dim 3, φ bijective, [φx,φy] = φ(α[x,y])".into())
}

fn c6() -> Outcome {
    let entries: Vec<CorpusEntry> = corpus().into_iter().filter(small_finite).collect();
    let r = suite(&entries, "N4.3");
    rows_clean(&r).map(|s| format!("{} GF(2)/GF(3) instances: {s}", entries.len()))
}

fn c7() -> Outcome {
    let entries = corpus();
    let mut pairs = 0usize;
    for e in &entries {
        let q = ambient(e);
        let ads: Vec<Matrix> = (0..q.dim()).map(|i| q.ad(&q.unit(i)).unwrap()).collect();
        for i in 0..q.dim() {
            for j in 0..q.dim() {
                let lhs = ads[i].mul(&ads[j]);
                let z = q.twist_vec(&q.bracket_vec(&q.unit(i), &q.unit(j)));
                let rhs = q.ad(&z).unwrap().add(&ads[j].mul(&ads[i]));
                ensure!(lhs == rhs, "{}: identity fails at ({i}, {j})", e.meta.name);
                pairs += 1;
            }
        }
    }
    let curated: Vec<CorpusEntry> = entries.into_iter().filter(curated).collect();
    let r = suite(&curated, "L5.5");
    let row = rows_clean(&r)?;
    Ok(format!("{pairs} basis pairs; curated {row}"))
}

fn c8() -> Outcome {
    rows_clean(&suite(&corpus(), "T5.11"))
}

fn c9() -> Outcome {
    rows_clean(&suite(&corpus(), "L6.1,L6.3,L6.4,L6.5,P6.7,C6.8"))
}

fn random_scalar(f: FieldSpec, rng: &mut StdRng) -> Scalar {
    match f.modulus() {
        Some(p) => f.element(rng.gen_range(0..p)),
        None => {
            let n: i64 = rng.gen_range(-50..=50);
            let d: i64 = rng.gen_range(1..=12);
            f.parse(&format!("{n}/{d}")).unwrap()
        }
    }
}

fn random_matrix(f: FieldSpec, rows: usize, cols: usize, rng: &mut StdRng) -> Matrix {
    // sparse entries give a spread of ranks
    let data = (0..rows * cols)
        .map(|_| {
            if rng.gen_bool(0.4) {
                f.zero()
            } else {
                random_scalar(f, rng)
            }
        })
        .collect();
    Matrix::from_flat(f, rows, cols, data)
}

fn field_axioms(f: FieldSpec, rng: &mut StdRng) -> Result<(), String> {
    let (zero, one) = (f.zero(), f.one());
    for _ in 0..10_000 {
        let (a, b, c) = (
            random_scalar(f, rng),
            random_scalar(f, rng),
            random_scalar(f, rng),
        );
        ensure!(&(&a + &b) + &c == &a + &(&b + &c), "+ assoc {a} {b} {c}");
        ensure!(&(&a * &b) * &c == &a * &(&b * &c), "* assoc {a} {b} {c}");
        ensure!(
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            "distributivity {a} {b} {c}"
        );
        ensure!(
            &a + &b == &b + &a && &a * &b == &b * &a,
            "commutativity {a} {b}"
        );
        ensure!(&a + &zero == a && &a * &one == a, "identities {a}");
        ensure!(
            (&a + &(-&a)).is_zero() && &(&a - &b) + &b == a,
            "negation {a} {b}"
        );
        match a.inv() {
            Some(i) => ensure!((&a * &i).is_one(), "inverse {a}"),
            None => ensure!(a.is_zero(), "no inverse for {a}"),
        }
        // residues against plain modular arithmetic
        if let Some(p) = f.modulus() {
            let (x, y, z) = (
                a.residue().unwrap() as u64,
                b.residue().unwrap() as u64,
                c.residue().unwrap() as u64,
            );
            let p = p as u64;
            let want = (x * y % p + z) % p;
            ensure!(
                (&(&a * &b) + &c).residue() == Some(want as u32),
                "residue {x}*{y}+{z}"
            );
        }
    }
    Ok(())
}

fn c10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(10);
    let fields = [
        gf(2),
        gf(3),
        gf(5),
        gf(7),
        gf(2_147_483_647),
        FieldSpec::rational(),
    ];
    for f in fields {
        field_axioms(f, &mut rng).map_err(|e| format!("{}: {e}", f.describe()))?;
        for _ in 0..300 {
            let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
            let m = random_matrix(f, r, c, &mut rng);
            let e = m.rref();
            ensure!(e.rref() == e, "{}: RREF not idempotent", f.describe());
            let k = m.kernel();
            ensure!(m.rank() + k.dim() == c, "{}: rank-nullity", f.describe());
            ensure!(
                k.basis()
                    .iter()
                    .all(|v| m.apply(v).iter().all(Scalar::is_zero)),
                "kernel vector"
            );

            let n = rng.gen_range(1..=6);
            let sub = |rng: &mut StdRng| {
                let k = rng.gen_range(0..=n);
                let rows = random_matrix(f, k, n, rng).row_vecs();
                Subspace::from_vectors(f, n, rows)
            };
            let (u, v) = (sub(&mut rng), sub(&mut rng));
            let (s, i) = (u.sum(&v).unwrap(), u.intersect(&v).unwrap());
            ensure!(
                s.dim() + i.dim() == u.dim() + v.dim(),
                "{}: dimension formula",
                f.describe()
            );
            // modular law with u ⊆ w
            let w = u.sum(&sub(&mut rng)).unwrap();
            let lhs = u.sum(&v).unwrap().intersect(&w).unwrap();
            let rhs = u.sum(&v.intersect(&w).unwrap()).unwrap();
            ensure!(lhs == rhs, "{}: modular law", f.describe());
        }
    }
    Ok(format!("{} fields, 10^4 triples each", fields.len()))
}

fn c11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let corpus = corpus_dir();
    let mut reports = Vec::new();
    for jobs in ["1", "8"] {
        let out = dir.path().join(format!("report_{jobs}.json"));
        let (code, _) = run_bin(&[
            "harness",
            corpus.to_str().unwrap(),
            "--checks",
            "all",
            "--jobs",
            jobs,
            "--out",
            out.to_str().unwrap(),
        ]);
        ensure!(code == 0, "harness --jobs {jobs} exited with {code}");
        reports.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure!(reports[0] == reports[1], "reports differ");
    Ok(format!("{} identical bytes", reports[0].len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("ex2_5 reproduction", c1, Duration::from_secs(1)),
        ("annihilator micro-facts", c2, Duration::from_secs(1)),
        (
            "quotient-predicate equivalence",
            c3,
            Duration::from_secs(600),
        ),
        ("Borel counterexample", c4, Duration::from_secs(5)),
        ("maximal quotients of sl2", c5, Duration::from_secs(5)),
        ("realization vs definition", c6, Duration::from_secs(600)),
        ("operator identities", c7, Duration::from_secs(60)),
        ("left quotients of A0 in A(Q)", c8, Duration::from_secs(600)),
        ("density and lifting suite", c9, Duration::from_secs(600)),
        ("kernel correctness", c10, Duration::from_secs(60)),
        ("determinism across --jobs", c11, Duration::from_secs(600)),
    ];
    // the shipped directory must match what the generator produces
    let shipped = homquot::corpus::shipped_corpus().unwrap();
    let on_disk = corpus();
    assert_eq!(
        shipped
            .iter()
            .map(|e| &e.meta.name)
            .collect::<BTreeSet<_>>(),
        on_disk
            .iter()
            .map(|e| &e.meta.name)
            .collect::<BTreeSet<_>>(),
        "corpus/ is stale; regenerate with `homquot gen --shipped --out corpus`"
    );

    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let took = t.elapsed();
        let r = match r {
            Ok(detail) if took > *budget => {
                Err(format!("{detail}; took {took:.2?}, budget {budget:?}"))
            }
            other => other,
        };
        match r {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{took:.2?}]", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {why} [{took:.2?}]", k + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
