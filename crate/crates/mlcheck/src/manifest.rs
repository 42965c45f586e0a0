//! Corpus manifests: where the lattices of a run come from.
//!
//! ```toml
//! builtins = ["field", "flat-diamond"]
//! enumerate_max_order = 4
//! files = ["extra/six.mlat"]
//!
//! [[divisors]]
//! from = 2
//! to = 60
//!
//! [[rings]]
//! zn = 12
//!
//! [[rings]]
//! modulus = 4
//! poly = [0, 0, 1]
//! relations = [[0, 2]]
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use mlcheck_core::constructions::{self, direct_product};
use mlcheck_core::enumerate::{enumerate_multiplicative_lattices, EnumerationError};
use mlcheck_core::lattice::DEFAULT_SIZE_CAP;
use mlcheck_core::ring::{build_ring_with_cap, ideal_lattice_with_cap, RingError, RingPresentation};
use mlcheck_core::Lattice;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::mlat::{self, MlatError};

pub const SIZE_CAP_VAR: &str = "MLCHECK_SIZE_CAP";

pub const BUILTINS: [&str; 5] = ["field", "field-product", "nil-chain", "idempotent-chain", "flat-diamond"];

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("manifest: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("divisor range {from}..={to} must start at 2 or above and be nonempty")]
    BadRange { from: u64, to: u64 },
    #[error("ring source needs either `zn` or `modulus` with `poly`")]
    BadRing,
    #[error("{id}: {source}")]
    Ring {
        id: String,
        #[source]
        source: RingError,
    },
    #[error("{id}: {source}")]
    Construction {
        id: String,
        #[source]
        source: constructions::ConstructionError,
    },
    #[error(transparent)]
    Mlat(#[from] MlatError),
    #[error("enumeration: {0}")]
    Enumeration(#[from] EnumerationError),
    #[error("corpus has {count} lattices, above the limit of {limit}")]
    TooManyLattices { count: usize, limit: usize },
    #[error("{var} must be a positive integer, found `{value}`")]
    BadSizeCap { var: &'static str, value: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DivisorRange {
    pub from: u64,
    pub to: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zn: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<u64>>,
}

impl RingSource {
    pub fn zn(n: u64) -> RingSource {
        RingSource {
            zn: Some(n),
            modulus: None,
            poly: None,
            relations: Vec::new(),
        }
    }

    pub fn poly(modulus: u64, poly: Vec<u64>, relations: Vec<Vec<u64>>) -> RingSource {
        RingSource {
            zn: None,
            modulus: Some(modulus),
            poly: Some(poly),
            relations,
        }
    }

    pub fn presentation(&self) -> Result<RingPresentation, ManifestError> {
        match (self.zn, self.modulus, &self.poly) {
            (Some(n), None, None) if self.relations.is_empty() => Ok(RingPresentation::zn(n)),
            (None, Some(n), Some(p)) => Ok(self
                .relations
                .iter()
                .fold(RingPresentation::new(n, p.clone()), |acc, r| acc.with_relation(r.clone()))),
            _ => Err(ManifestError::BadRing),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusManifest {
    #[serde(default)]
    pub builtins: Vec<String>,
    #[serde(default)]
    pub divisors: Vec<DivisorRange>,
    #[serde(default)]
    pub rings: Vec<RingSource>,
    /// Every multiplicative lattice with at most this many elements.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerate_max_order: Option<usize>,
    /// mlat files, relative to the manifest's directory.
    #[serde(default)]
    pub files: Vec<PathBuf>,
    /// Drop lattices isomorphic to an earlier member.
    #[serde(default = "default_true")]
    pub dedup: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_lattices: Option<usize>,
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

fn default_true() -> bool {
    true
}

impl Default for CorpusManifest {
    /// Built-ins, divisor lattices up to 200, the listed rings and every
    /// lattice of order at most 5.
    fn default() -> CorpusManifest {
        CorpusManifest {
            builtins: BUILTINS.iter().map(|s| s.to_string()).collect(),
            divisors: vec![DivisorRange { from: 2, to: 200 }],
            rings: [4, 8, 12, 16, 36, 240]
                .into_iter()
                .map(RingSource::zn)
                .chain([
                    RingSource::poly(4, vec![0, 0, 1], vec![vec![0, 2]]),
                    RingSource::poly(16, vec![4, 0, 1], vec![]),
                    RingSource::poly(16, vec![7, 0, 1], vec![]),
                ])
                .collect(),
            enumerate_max_order: Some(5),
            files: Vec::new(),
            dedup: true,
            size_cap: None,
            max_lattices: None,
            base_dir: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    /// Ids of later sources isomorphic to this one.
    pub aliases: Vec<String>,
    pub lattice: Lattice,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// SHA-256 over the ids and mlat text of every entry.
    pub digest: String,
}

pub fn builtin(name: &str) -> Result<Lattice, ManifestError> {
    Ok(match name {
        "field" => constructions::field(),
        "field-product" => direct_product(&constructions::field(), &constructions::field()).map_err(|source| {
            ManifestError::Construction {
                id: name.to_string(),
                source,
            }
        })?,
        "nil-chain" => constructions::three_chain(true),
        "idempotent-chain" => constructions::three_chain(false),
        "flat-diamond" => constructions::flat_diamond(),
        _ => return Err(ManifestError::UnknownBuiltin(name.to_string())),
    })
}

/// `MLCHECK_SIZE_CAP`, if set.
pub fn size_cap_from_env() -> Result<Option<usize>, ManifestError> {
    match std::env::var(SIZE_CAP_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(ManifestError::BadSizeCap {
                var: SIZE_CAP_VAR,
                value: v,
            }),
        },
        Err(_) => Ok(None),
    }
}

impl CorpusManifest {
    pub fn from_toml(text: &str) -> Result<CorpusManifest, ManifestError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<CorpusManifest, ManifestError> {
        let text = std::fs::read_to_string(path).map_err(|source| ManifestError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut m = CorpusManifest::from_toml(&text)?;
        m.base_dir = path.parent().map(Path::to_path_buf);
        Ok(m)
    }

    pub fn only_builtins(names: &[&str]) -> CorpusManifest {
        CorpusManifest {
            builtins: names.iter().map(|s| s.to_string()).collect(),
            divisors: Vec::new(),
            rings: Vec::new(),
            enumerate_max_order: None,
            ..CorpusManifest::default()
        }
    }

    /// The environment variable wins over the manifest's own cap.
    pub fn effective_cap(&self) -> Result<usize, ManifestError> {
        Ok(size_cap_from_env()?.or(self.size_cap).unwrap_or(DEFAULT_SIZE_CAP))
    }

    /// Builds every lattice in source order: built-ins, divisor ranges,
    /// rings, enumeration, files.
    pub fn resolve(&self) -> Result<Corpus, ManifestError> {
        let cap = self.effective_cap()?;
        let mut raw: Vec<(String, Lattice)> = Vec::new();
        for name in &self.builtins {
            raw.push((format!("builtin:{name}"), builtin(name)?));
        }
        for r in &self.divisors {
            if r.from < 2 || r.to < r.from {
                return Err(ManifestError::BadRange { from: r.from, to: r.to });
            }
            for n in r.from..=r.to {
                let id = format!("divisor:{n}");
                let l = constructions::divisor_lattice_with_cap(n, cap)
                    .map_err(|source| ManifestError::Construction { id: id.clone(), source })?;
                raw.push((id, l));
            }
        }
        for src in &self.rings {
            let p = src.presentation()?;
            let id = format!("ring:{}", p.describe());
            let ring = build_ring_with_cap(&p, cap).map_err(|source| ManifestError::Ring { id: id.clone(), source })?;
            let ideals = ideal_lattice_with_cap(&ring, cap).map_err(|source| ManifestError::Ring { id: id.clone(), source })?;
            raw.push((id, ideals.lattice));
        }
        if let Some(k) = self.enumerate_max_order {
            let mut per_size: BTreeMap<usize, usize> = BTreeMap::new();
            enumerate_multiplicative_lattices(k, |l| {
                let idx = per_size.entry(l.size()).or_default();
                raw.push((format!("enum:n{}:{:03}", l.size(), idx), l));
                *idx += 1;
            })?;
        }
        for f in &self.files {
            let path = match &self.base_dir {
                Some(dir) if f.is_relative() => dir.join(f),
                _ => f.clone(),
            };
            raw.push((format!("file:{}", f.display()), mlat::read(&path, cap)?));
        }

        let entries = if self.dedup { dedup(raw) } else { raw.into_iter().map(|(id, lattice)| CorpusEntry { id, aliases: Vec::new(), lattice }).collect() };
        if let Some(limit) = self.max_lattices {
            if entries.len() > limit {
                return Err(ManifestError::TooManyLattices {
                    count: entries.len(),
                    limit,
                });
            }
        }
        let mut hasher = Sha256::new();
        for e in &entries {
            hasher.update(e.id.as_bytes());
            hasher.update(b"\n");
            hasher.update(mlat::write(&e.lattice).as_bytes());
        }
        Ok(Corpus {
            entries,
            digest: hex::encode(hasher.finalize()),
        })
    }
}

fn dedup(raw: Vec<(String, Lattice)>) -> Vec<CorpusEntry> {
    let mut first: BTreeMap<Vec<u16>, usize> = BTreeMap::new();
    let mut out: Vec<CorpusEntry> = Vec::new();
    for (id, lattice) in raw {
        let cert = lattice.canonical_form().into_certificate();
        match first.get(&cert) {
            Some(&i) => out[i].aliases.push(id),
            None => {
                first.insert(cert, out.len());
                out.push(CorpusEntry {
                    id,
                    aliases: Vec::new(),
                    lattice,
                });
            }
        }
    }
    out
}
