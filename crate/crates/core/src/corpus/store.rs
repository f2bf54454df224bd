//! Corpus directories: `<name>.alg.json`, `<name>.ext.json` and `manifest.json`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::curated::{curated, Expected};
use super::{generate_extensions, shipped_specs, GeneratorSpec};
use crate::error::{Error, Result};
use crate::homlie::HomLieAlgebra;
use crate::quotients::Extension;

#[derive(Clone, Debug)]
pub enum Instance {
    Algebra(HomLieAlgebra),
    Extension(Extension),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Algebra(_) => "algebra",
            Instance::Extension(_) => "extension",
        }
    }

    fn suffix(&self) -> &'static str {
        match self {
            Instance::Algebra(_) => "alg.json",
            Instance::Extension(_) => "ext.json",
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        match self {
            Instance::Algebra(l) => Ok(l.to_json_string()),
            Instance::Extension(e) => Ok(e.to_json_string()),
        }
    }

    /// The algebra itself, or the subalgebra of an extension.
    pub fn algebra(&self) -> &HomLieAlgebra {
        match self {
            Instance::Algebra(l) => l,
            Instance::Extension(e) => e.sub_algebra(),
        }
    }

    pub fn extension(&self) -> Option<&Extension> {
        match self {
            Instance::Extension(e) => Some(e),
            Instance::Algebra(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub name: String,
    pub file: String,
    pub kind: String,
    pub field: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tags: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub meta: ManifestEntry,
    pub instance: Instance,
}

fn entry(name: String, instance: Instance, tags: Vec<String>) -> CorpusEntry {
    let l = match &instance {
        Instance::Algebra(l) => l,
        Instance::Extension(e) => e.ambient(),
    };
    let meta = ManifestEntry {
        file: format!("{name}.{}", instance.suffix()),
        name,
        kind: instance.kind().into(),
        field: l.field().describe(),
        dim: l.dim(),
        strategy: None,
        seed: None,
        index: None,
        tags,
        expected: None,
    };
    CorpusEntry { meta, instance }
}

/// Algebras from a generator spec, named like [`generated_entries`].
pub fn generated_algebra_entries(
    spec: &GeneratorSpec,
    field_name: &str,
) -> Result<Vec<CorpusEntry>> {
    let algs = super::generate(spec)?;
    Ok(algs
        .into_iter()
        .enumerate()
        .map(|(k, l)| {
            let name = format!(
                "gen_{field_name}_{}_d{}_s{}_{k:03}",
                spec.strategy, spec.dim, spec.seed
            );
            let mut tags = Vec::new();
            if spec.strategy == super::Strategy::CentralDegenerate {
                tags.push("negative-control".to_string());
            }
            let mut c = entry(name, Instance::Algebra(l), tags);
            c.meta.strategy = Some(spec.strategy.name().into());
            c.meta.seed = Some(spec.seed);
            c.meta.index = Some(k);
            c
        })
        .collect())
}

/// Extensions from a generator spec, named by spec and index.
pub fn generated_entries(spec: &GeneratorSpec, field_name: &str) -> Result<Vec<CorpusEntry>> {
    let exts = generate_extensions(spec)?;
    Ok(exts
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            let name = format!(
                "gen_{field_name}_{}_d{}_s{}_{k:03}",
                spec.strategy, spec.dim, spec.seed
            );
            let mut tags = Vec::new();
            if spec.strategy == super::Strategy::CentralDegenerate {
                tags.push("negative-control".to_string());
            }
            let mut c = entry(name, Instance::Extension(e), tags);
            c.meta.strategy = Some(spec.strategy.name().into());
            c.meta.seed = Some(spec.seed);
            c.meta.index = Some(k);
            c
        })
        .collect())
}

/// The curated instances followed by the generated extensions.
pub fn shipped_corpus() -> Result<Vec<CorpusEntry>> {
    let mut out: Vec<CorpusEntry> = curated()
        .into_iter()
        .map(|c| {
            let mut e = entry(
                c.name.into(),
                c.instance,
                c.tags.iter().map(|t| t.to_string()).collect(),
            );
            e.meta.strategy = Some("curated".into());
            e.meta.expected = Some(c.expected);
            e
        })
        .collect();
    for (spec, fname) in shipped_specs() {
        out.extend(generated_entries(&spec, fname)?);
    }
    Ok(out)
}

/// Write instance files and merge their entries into `manifest.json`
/// (entries with the same name are replaced; the manifest is kept sorted).
pub fn write_corpus(dir: &Path, entries: &[CorpusEntry]) -> Result<()> {
    fs::create_dir_all(dir)?;
    let manifest_path = dir.join("manifest.json");
    let mut by_name: BTreeMap<String, ManifestEntry> = BTreeMap::new();
    if manifest_path.exists() {
        let m: Manifest = serde_json::from_str(&fs::read_to_string(&manifest_path)?)?;
        for e in m.entries {
            by_name.insert(e.name.clone(), e);
        }
    }
    for e in entries {
        let mut text = e.instance.to_json_string()?;
        text.push('\n');
        fs::write(dir.join(&e.meta.file), text)?;
        by_name.insert(e.meta.name.clone(), e.meta.clone());
    }
    let manifest = Manifest {
        entries: by_name.into_values().collect(),
    };
    let mut text = serde_json::to_string_pretty(&manifest)?;
    text.push('\n');
    fs::write(manifest_path, text)?;
    Ok(())
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path)?;
    let name = path.to_string_lossy();
    if name.ends_with(".ext.json") {
        Ok(Instance::Extension(Extension::from_json_str(&text)?))
    } else if name.ends_with(".alg.json") {
        Ok(Instance::Algebra(
            HomLieAlgebra::from_json_str(&text)?.verify()?,
        ))
    } else {
        Err(Error::Parse(format!(
            "{name}: expected .alg.json or .ext.json"
        )))
    }
}

/// Load every instance of a corpus directory in name order. Without a
/// manifest the directory is scanned for instance files.
pub fn load_corpus(dir: &Path) -> Result<Vec<CorpusEntry>> {
    let manifest_path = dir.join("manifest.json");
    let metas: Vec<ManifestEntry> = if manifest_path.exists() {
        let m: Manifest = serde_json::from_str(&fs::read_to_string(&manifest_path)?)?;
        m.entries
    } else {
        let mut files: Vec<String> = fs::read_dir(dir)?
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .filter(|n| n.ends_with(".alg.json") || n.ends_with(".ext.json"))
            .collect();
        files.sort();
        files
            .into_iter()
            .map(|file| {
                let (name, kind) = match file.strip_suffix(".alg.json") {
                    Some(n) => (n.to_string(), "algebra"),
                    None => (file.trim_end_matches(".ext.json").to_string(), "extension"),
                };
                ManifestEntry {
                    name,
                    file,
                    kind: kind.into(),
                    field: String::new(),
                    dim: 0,
                    strategy: None,
                    seed: None,
                    index: None,
                    tags: Vec::new(),
                    expected: None,
                }
            })
            .collect()
    };
    let mut out = Vec::with_capacity(metas.len());
    for meta in metas {
        let instance = read_instance(&dir.join(&meta.file))?;
        out.push(CorpusEntry { meta, instance });
    }
    out.sort_by(|a, b| a.meta.name.cmp(&b.meta.name));
    Ok(out)
}
