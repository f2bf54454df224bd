use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homquot::corpus::{
    generated_algebra_entries, generated_entries, load_corpus, shipped_corpus, write_corpus,
    GeneratorSpec, Strategy,
};
use homquot::envelope::{self, Source};
use homquot::exalg::FieldSpec;
use homquot::harness;
use homquot::homlie::HomLieAlgebra;
use homquot::maxq;
use homquot::props;
use homquot::quotients::{self, Extension};
use homquot::verdict::Truth;
use homquot::{Error, Limits, Mode};

#[derive(Parser, Debug)]
#[command(
    name = "homquot",
    version,
    about = "Algebras of quotients of finite-dimensional Hom-Lie algebras"
)]
struct Cli {
    /// exhaustive | derived | witness | auto
    #[arg(long, global = true, default_value = "auto")]
    mode: Mode,
    #[arg(long, global = true, default_value_t = Limits::default().max_enum)]
    max_enum: u64,
    #[arg(long, global = true, default_value_t = Limits::default().max_lattice)]
    max_lattice: usize,
    /// Seed for generation; nothing else is randomized.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Algebra,
    Extension,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Hom-Lie axioms and classical Jacobi of an algebra file.
    Check { path: PathBuf },
    /// Nondegenerate, semiprime, prime, Ann(L), minimum essential ideal.
    Analyze { path: PathBuf },
    /// Weak quotient, quotient and ideally absorbed verdicts of an extension.
    Quotients { path: PathBuf },
    /// Maximal algebra of quotients of a semiprime algebra.
    Maxq {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Associative envelopes and density of an extension.
    Envelope {
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run property checks over a corpus directory.
    Harness {
        dir: PathBuf,
        /// `all` or a comma-separated list of check ids.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Report path; defaults to report.json in the working directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate instances into a corpus directory and update its manifest.
    Gen {
        #[arg(long)]
        strategy: Option<Strategy>,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long, default_value = "gf2")]
        field: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, value_enum, default_value = "algebra")]
        kind: Kind,
        /// Write the shipped corpus (curated plus generated) instead.
        #[arg(long)]
        shipped: bool,
        #[arg(long, default_value = "corpus")]
        out: PathBuf,
    },
}

/// Exit status with the JSON document to print.
struct Done {
    code: u8,
    doc: Value,
}

fn ok(doc: Value) -> Done {
    Done { code: 0, doc }
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::InvalidField(_)
            | Error::UnsupportedMode(_)
            | Error::UnknownCheck(_)
            | Error::DimensionMismatch(_)
            | Error::FieldMismatch(_, _)
            | Error::IndexOutOfRange(_)
            | Error::NotVerified(_)
            | Error::NotASubalgebra(_)
    )
}

fn read(path: &Path) -> homquot::Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn load_algebra(path: &Path) -> homquot::Result<HomLieAlgebra> {
    HomLieAlgebra::from_json_str(&read(path)?)?.verify()
}

fn load_extension(path: &Path) -> homquot::Result<Extension> {
    Extension::from_json_str(&read(path)?)
}

fn write_out(out: &Option<PathBuf>, doc: &Value) -> homquot::Result<()> {
    if let Some(p) = out {
        let mut s = serde_json::to_string_pretty(doc)?;
        s.push('\n');
        fs::write(p, s)?;
    }
    Ok(())
}

fn cmd_check(path: &Path) -> homquot::Result<Done> {
    let l = HomLieAlgebra::from_json_str(&read(path)?)?;
    let report = l.check_axioms();
    eprintln!(
        "alternating {}, hom-jacobi {}, multiplicative {}, classical jacobi {}",
        report.alternating.value,
        report.hom_jacobi.value,
        report.multiplicative.value,
        report.classical_jacobi.value
    );
    let code = if report.hom_axioms_hold() { 0 } else { 1 };
    Ok(Done {
        code,
        doc: json!({ "hom_axioms_hold": report.hom_axioms_hold(), "report": report }),
    })
}

fn cmd_analyze(path: &Path, mode: Mode, lim: &Limits) -> homquot::Result<Done> {
    let l = load_algebra(path)?;
    let nd = props::is_nondegenerate(&l, mode, lim)?;
    let sp = props::is_semiprime(&l, mode, lim)?;
    let pr = props::is_prime(&l, mode, lim)?;
    let ann = l.annihilator(&l.full_space())?;
    // with Ann(L) = L every subspace is an ideal, so only L is essential
    let min_ess = if ann.dim() == l.dim() || props::has_trivial_lattice(&l)? {
        json!(l.full_space())
    } else if l.field().is_finite() {
        match props::minimum_essential_ideal(&l, lim) {
            Ok(s) => json!(s),
            Err(e @ (Error::EnumerationTooLarge { .. } | Error::LatticeTooLarge { .. })) => {
                json!({ "unknown": e.to_string() })
            }
            Err(e) => return Err(e),
        }
    } else {
        json!({ "unknown": "the ideal lattice is only enumerated over finite fields" })
    };
    eprintln!(
        "nondegenerate {}, semiprime {}, prime {}, dim Ann(L) = {}",
        nd.value,
        sp.value,
        pr.value,
        ann.dim()
    );
    Ok(ok(json!({
        "nondegenerate": nd,
        "semiprime": sp,
        "prime": pr,
        "annihilator": ann,
        "minimum_essential_ideal": min_ess,
    })))
}

fn cmd_quotients(path: &Path, mode: Mode, lim: &Limits) -> homquot::Result<Done> {
    let e = load_extension(path)?;
    let weak = quotients::is_weak_quotient_algebra(&e, mode, lim)?;
    let quot = quotients::is_quotient_algebra(&e, mode, lim)?;
    let abs = quotients::is_ideally_absorbed(&e, mode, lim)?;
    let derived = quotients::quotient_derived(&e, lim)?;
    let mut agree = quot.is_unknown() || abs.is_unknown() || quot.value == abs.value;
    if !derived.is_unknown() && !quot.is_unknown() && derived.value != quot.value {
        agree = false;
    }
    eprintln!(
        "weak {}, quotient {}, ideally absorbed {}, derived {}{}",
        weak.value,
        quot.value,
        abs.value,
        derived.value,
        if agree { "" } else { "  DISAGREEMENT" }
    );
    Ok(Done {
        code: if agree { 0 } else { 1 },
        doc: json!({
            "weak_quotient": weak,
            "quotient": quot,
            "ideally_absorbed": abs,
            "derived": derived,
            "agreement": agree,
        }),
    })
}

fn cmd_maxq(path: &Path, out: &Option<PathBuf>, lim: &Limits) -> homquot::Result<Done> {
    let l = load_algebra(path)?;
    let mq = match maxq::build_maximal_quotients(&l, lim) {
        Ok(m) => m,
        Err(Error::PreconditionFailed(m)) => {
            eprintln!("hypotheses not met: {m}");
            return Ok(Done {
                code: 1,
                doc: json!({ "error": "precondition", "reason": m }),
            });
        }
        Err(e) => return Err(e),
    };
    let mut doc = serde_json::to_value(&mq)?;
    doc["phi_bijective"] = json!(mq.phi_is_bijective());
    eprintln!(
        "carrier dim {}, φ bijective {}",
        mq.dim(),
        mq.phi_is_bijective()
    );
    write_out(out, &doc)?;
    Ok(ok(doc))
}

fn truth(v: Option<Truth>) -> Value {
    v.map_or(Value::Null, |t| json!(t))
}

fn cmd_envelope(
    path: &Path,
    out: &Option<PathBuf>,
    mode: Mode,
    lim: &Limits,
) -> homquot::Result<Done> {
    let e = load_extension(path)?;
    let q = e.ambient();
    let aql = envelope::inner_envelope(&e, Source::L);
    let aq = envelope::inner_envelope(&e, Source::Q);
    let mq = envelope::multiplication_algebra(q);
    let a0 = envelope::invariant_subalgebra_a0(&e)?;
    let dens = envelope::hom_annihilator_dense(&e)?;
    let msp_q = envelope::is_multiplicatively_semiprime(q, mode, lim)?;
    let msp_l = envelope::is_multiplicatively_semiprime(e.sub_algebra(), mode, lim)?;
    let sp_l = props::is_semiprime(e.sub_algebra(), mode, lim)?;
    let quot = quotients::is_quotient_algebra(&e, mode, lim)?;
    let left = if sp_l.is_true() && quot.is_true() {
        json!(envelope::is_left_quotient_algebra(&a0, &aq, mode, lim)?)
    } else {
        json!({ "not_applicable": format!("L semiprime {}, quotient {}", sp_l.value, quot.value) })
    };
    eprintln!(
        "dim A_Q(L) {}, dim A(Q) {}, dim M(Q) {}, dim A0 {}, dense {}",
        aql.dim(),
        aq.dim(),
        mq.dim(),
        a0.dim(),
        dens.dense.value
    );
    let doc = json!({
        "a_q_l": aql,
        "a_q": aq,
        "m_q": mq,
        "a0": a0,
        "dense": dens.dense,
        "l_ann": dens.l_ann,
        "dense_via_a_q": truth(dens.a_q_variant),
        "q_multiplicatively_semiprime": msp_q,
        "l_multiplicatively_semiprime": msp_l,
        "left_quotient_a0_in_a_q": left,
    });
    write_out(out, &doc)?;
    Ok(ok(doc))
}

fn cmd_harness(
    dir: &Path,
    checks: &str,
    out: &Option<PathBuf>,
    lim: &Limits,
) -> homquot::Result<Done> {
    let selected = harness::select_checks(checks)?;
    let entries = load_corpus(dir)?;
    let report = harness::run_suite(&entries, &selected, lim)?;
    eprint!("{}", report.summary());
    let text = report.to_json_string()?;
    let path = out.clone().unwrap_or_else(|| PathBuf::from("report.json"));
    fs::write(&path, &text)?;
    eprintln!("report written to {}", path.display());
    Ok(Done {
        code: if report.has_failures() { 1 } else { 0 },
        doc: serde_json::from_str(&text)?,
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    strategy: Option<Strategy>,
    dim: Option<usize>,
    field: &str,
    seed: u64,
    count: usize,
    kind: Kind,
    shipped: bool,
    out: &Path,
) -> homquot::Result<Done> {
    let entries = if shipped {
        shipped_corpus()?
    } else {
        let strategy = strategy
            .ok_or_else(|| Error::Parse("--strategy is required unless --shipped".into()))?;
        let dim = dim.ok_or_else(|| Error::Parse("--dim is required unless --shipped".into()))?;
        let f: FieldSpec = field.parse()?;
        let fname = match f.modulus() {
            Some(p) => format!("gf{p}"),
            None => "q".to_string(),
        };
        let spec = GeneratorSpec {
            strategy,
            field: f,
            dim,
            seed,
            count,
        };
        match kind {
            Kind::Algebra => generated_algebra_entries(&spec, &fname)?,
            Kind::Extension => generated_entries(&spec, &fname)?,
        }
    };
    write_corpus(out, &entries)?;
    eprintln!("{} instances written to {}", entries.len(), out.display());
    let names: Vec<&str> = entries.iter().map(|e| e.meta.name.as_str()).collect();
    Ok(ok(
        json!({ "written": entries.len(), "dir": out, "names": names }),
    ))
}

fn run(cli: Cli) -> homquot::Result<Done> {
    let lim = Limits {
        max_enum: cli.max_enum,
        max_lattice: cli.max_lattice,
    };
    match &cli.cmd {
        Cmd::Check { path } => cmd_check(path),
        Cmd::Analyze { path } => cmd_analyze(path, cli.mode, &lim),
        Cmd::Quotients { path } => cmd_quotients(path, cli.mode, &lim),
        Cmd::Maxq { path, out } => cmd_maxq(path, out, &lim),
        Cmd::Envelope { path, out } => cmd_envelope(path, out, cli.mode, &lim),
        Cmd::Harness { dir, checks, out } => cmd_harness(dir, checks, out, &lim),
        Cmd::Gen {
            strategy,
            dim,
            field,
            count,
            kind,
            shipped,
            out,
        } => cmd_gen(
            *strategy, *dim, field, cli.seed, *count, *kind, *shipped, out,
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(cli)) {
        Ok(done) => {
            match serde_json::to_string_pretty(&done.doc) {
                Ok(s) => println!("{s}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            ExitCode::from(done.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            println!("{}", json!({ "error": e.to_string() }));
            ExitCode::from(if usage_error(&e) { 2 } else { 1 })
        }
    }
}
