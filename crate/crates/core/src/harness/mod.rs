//! Property harness: every check is an implication whose hypotheses are
//! decided first; instances where a hypothesis is false or undecided count as
//! not applicable, never as passes.

mod checks;
mod ctx;

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::Limits;
use crate::corpus::{CorpusEntry, Instance};
use crate::error::{Error, Result};

pub use ctx::Ctx;

/// What a check consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// A single Hom-Lie algebra; extension entries contribute their ambient algebra.
    Algebra,
    /// A pair `L ⊆ Q`; algebra entries contribute the trivial extension.
    Extension,
    /// A pair together with the ideals of `L`.
    ExtensionIdeal,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail { certificate: serde_json::Value },
    NotApplicable { reason: String },
    Unknown { reason: String },
}

impl Outcome {
    pub fn is_fail(&self) -> bool {
        matches!(self, Outcome::Fail { .. })
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

type CheckFn = fn(&Ctx) -> Result<Outcome>;

pub struct PropertyCheck {
    pub id: &'static str,
    /// Short statement of the property.
    pub anchor: &'static str,
    pub shape: Shape,
    run: CheckFn,
}

impl std::fmt::Debug for PropertyCheck {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PropertyCheck")
            .field("id", &self.id)
            .field("shape", &self.shape)
            .finish()
    }
}

/// Every registered check in report order.
pub fn registry() -> &'static [PropertyCheck] {
    checks::REGISTRY
}

pub fn find_check(id: &str) -> Result<&'static PropertyCheck> {
    registry()
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))
}

/// Parse `all` or a comma-separated list of check ids.
pub fn select_checks(spec: &str) -> Result<Vec<&'static PropertyCheck>> {
    let spec = spec.trim();
    if spec.is_empty() || spec == "all" {
        return Ok(registry().iter().collect());
    }
    let mut out: Vec<&'static PropertyCheck> = Vec::new();
    for id in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let c = find_check(id)?;
        if !out.iter().any(|o| o.id == c.id) {
            out.push(c);
        }
    }
    // keep registry order so reports do not depend on how the list was typed
    out.sort_by_key(|c| registry().iter().position(|r| r.id == c.id));
    Ok(out)
}

/// Turn library errors into outcomes. Caps and unsupported modes are not
/// failures; structural violations are.
fn settle(r: Result<Outcome>) -> Outcome {
    match r {
        Ok(o) => o,
        Err(
            e @ (Error::EnumerationTooLarge { .. }
            | Error::LatticeTooLarge { .. }
            | Error::BudgetExhausted(_)),
        ) => Outcome::Unknown {
            reason: cap_reason(&e),
        },
        Err(Error::UnsupportedMode(m)) => Outcome::NotApplicable {
            reason: format!("unsupported: {m}"),
        },
        Err(Error::PreconditionFailed(m)) => Outcome::NotApplicable {
            reason: format!("precondition: {m}"),
        },
        Err(e) => Outcome::Fail {
            certificate: serde_json::json!({ "error": e.to_string() }),
        },
    }
}

fn cap_reason(e: &Error) -> String {
    match e {
        Error::EnumerationTooLarge { .. } => "enumeration cap reached".into(),
        Error::LatticeTooLarge { .. } => "lattice cap reached".into(),
        _ => "budget exhausted".into(),
    }
}

pub fn run_check(id: &str, instance: &Instance, limits: &Limits) -> Result<Outcome> {
    let check = find_check(id)?;
    let ctx = Ctx::new(instance, *limits)?;
    Ok(settle((check.run)(&ctx)))
}

/// Run a list of checks on one instance, sharing cached verdicts between them.
pub fn run_checks(
    checks: &[&PropertyCheck],
    instance: &Instance,
    limits: &Limits,
) -> Result<Vec<Outcome>> {
    let ctx = Ctx::new(instance, *limits)?;
    Ok(checks.iter().map(|c| settle((c.run)(&ctx))).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub kind: String,
    pub instance_json: serde_json::Value,
    pub certificate: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub id: String,
    pub anchor: String,
    pub shape: Shape,
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub unknown: usize,
    pub na_reasons: BTreeMap<String, usize>,
    pub unknown_reasons: BTreeMap<String, usize>,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Fingerprint {
    pub instances: usize,
    pub algebras: usize,
    pub extensions: usize,
    pub fields: BTreeSet<String>,
    pub dims: BTreeSet<usize>,
    pub strategies: BTreeMap<String, usize>,
    pub seeds: BTreeSet<u64>,
    /// sha256 over names and instance JSON, in corpus order.
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarnessReport {
    pub fingerprint: Fingerprint,
    pub limits: LimitsJson,
    pub checks: Vec<CheckRow>,
    pub total_pass: usize,
    pub total_fail: usize,
    pub total_not_applicable: usize,
    pub total_unknown: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LimitsJson {
    pub max_enum: u64,
    pub max_lattice: usize,
}

impl HarnessReport {
    pub fn has_failures(&self) -> bool {
        self.total_fail > 0
    }

    pub fn to_json_string(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// One line per check.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.checks {
            out.push_str(&format!(
                "{:<6} pass {:>4}  fail {:>3}  n/a {:>4}  unknown {:>3}\n",
                r.id, r.pass, r.fail, r.not_applicable, r.unknown
            ));
        }
        out.push_str(&format!(
            "total  pass {:>4}  fail {:>3}  n/a {:>4}  unknown {:>3}  ({} instances)\n",
            self.total_pass,
            self.total_fail,
            self.total_not_applicable,
            self.total_unknown,
            self.fingerprint.instances
        ));
        out
    }
}

pub fn fingerprint(entries: &[CorpusEntry]) -> Result<Fingerprint> {
    let mut h = Sha256::new();
    let mut fp = Fingerprint {
        instances: entries.len(),
        algebras: 0,
        extensions: 0,
        fields: BTreeSet::new(),
        dims: BTreeSet::new(),
        strategies: BTreeMap::new(),
        seeds: BTreeSet::new(),
        digest: String::new(),
    };
    for e in entries {
        match &e.instance {
            Instance::Algebra(l) => {
                fp.algebras += 1;
                fp.fields.insert(l.field().describe());
                fp.dims.insert(l.dim());
            }
            Instance::Extension(x) => {
                fp.extensions += 1;
                fp.fields.insert(x.ambient().field().describe());
                fp.dims.insert(x.ambient().dim());
            }
        }
        let strategy = e
            .meta
            .strategy
            .clone()
            .unwrap_or_else(|| "unspecified".into());
        *fp.strategies.entry(strategy).or_default() += 1;
        if let Some(s) = e.meta.seed {
            fp.seeds.insert(s);
        }
        h.update(e.meta.name.as_bytes());
        h.update([0u8]);
        h.update(e.instance.to_json_string()?.as_bytes());
        h.update([0u8]);
    }
    fp.digest = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    Ok(fp)
}

/// Run the selected checks over a corpus. Instances are processed in parallel
/// on the current rayon pool and merged in corpus order, so the report does
/// not depend on the thread count.
pub fn run_suite(
    entries: &[CorpusEntry],
    checks: &[&PropertyCheck],
    limits: &Limits,
) -> Result<HarnessReport> {
    let per_instance: Vec<Result<Vec<Outcome>>> = entries
        .par_iter()
        .map(|e| run_checks(checks, &e.instance, limits))
        .collect();
    let mut rows: Vec<CheckRow> = checks
        .iter()
        .map(|c| CheckRow {
            id: c.id.into(),
            anchor: c.anchor.into(),
            shape: c.shape,
            pass: 0,
            fail: 0,
            not_applicable: 0,
            unknown: 0,
            na_reasons: BTreeMap::new(),
            unknown_reasons: BTreeMap::new(),
            failures: Vec::new(),
        })
        .collect();
    for (entry, outcomes) in entries.iter().zip(per_instance) {
        let outcomes = outcomes?;
        for (row, o) in rows.iter_mut().zip(outcomes) {
            match o {
                Outcome::Pass => row.pass += 1,
                Outcome::NotApplicable { reason } => {
                    row.not_applicable += 1;
                    *row.na_reasons.entry(reason).or_default() += 1;
                }
                Outcome::Unknown { reason } => {
                    row.unknown += 1;
                    *row.unknown_reasons.entry(reason).or_default() += 1;
                }
                Outcome::Fail { certificate } => {
                    row.fail += 1;
                    row.failures.push(Failure {
                        instance: entry.meta.name.clone(),
                        kind: entry.instance.kind().into(),
                        instance_json: serde_json::from_str(&entry.instance.to_json_string()?)?,
                        certificate,
                    });
                }
            }
        }
    }
    let sum = |f: fn(&CheckRow) -> usize| rows.iter().map(f).sum();
    Ok(HarnessReport {
        fingerprint: fingerprint(entries)?,
        limits: LimitsJson {
            max_enum: limits.max_enum,
            max_lattice: limits.max_lattice,
        },
        total_pass: sum(|r| r.pass),
        total_fail: sum(|r| r.fail),
        total_not_applicable: sum(|r| r.not_applicable),
        total_unknown: sum(|r| r.unknown),
        checks: rows,
    })
}
