//! Runs registered properties over a resolved corpus.

use std::time::{Duration, Instant};

use mlcheck_core::analysis::LatticeAnalysis;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::manifest::Corpus;
use crate::registry::{registry, Outcome, PropertyDescriptor, Subject};

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub lattice: String,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub id: String,
    pub anchor: String,
    pub examined: usize,
    pub hypothesis_hits: usize,
    pub violations: Vec<ViolationRecord>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    pub mandatory: bool,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn vacuous(&self) -> bool {
        self.hypothesis_hits == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    /// Some property reported a violation.
    Violation,
    /// A mandatory property had no hypothesis hits.
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunReport {
    pub manifest_digest: String,
    pub properties: Vec<PropertyReport>,
    pub verdict: Verdict,
}

impl RunReport {
    pub fn property(&self, id: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.id == id)
    }

    /// Mandatory properties without hypothesis hits.
    pub fn vacuous_mandatory(&self) -> Vec<&str> {
        self.properties
            .iter()
            .filter(|p| p.mandatory && p.vacuous())
            .map(|p| p.id.as_str())
            .collect()
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Violation | Verdict::Vacuous => 1,
        }
    }
}

/// Selects properties by id, keeping registry order; `None` means all.
pub fn select(ids: Option<&[String]>) -> Result<Vec<PropertyDescriptor>, RunError> {
    let all = registry();
    let Some(ids) = ids else {
        return Ok(all);
    };
    for id in ids {
        if !all.iter().any(|p| p.id == id) {
            return Err(RunError::UnknownProperty(id.clone()));
        }
    }
    Ok(all.into_iter().filter(|p| ids.iter().any(|id| id == p.id)).collect())
}

/// Outcome and time per property for one lattice.
fn run_one(props: &[PropertyDescriptor], id: &str, l: &mlcheck_core::Lattice, cap: usize) -> Vec<(Outcome, Duration)> {
    let analysis = LatticeAnalysis::new(l);
    let subject = Subject {
        id,
        lattice: l,
        analysis: &analysis,
        cap,
    };
    props
        .iter()
        .map(|p| {
            let start = Instant::now();
            let o = (p.check)(&subject);
            (o, start.elapsed())
        })
        .collect()
}

/// Evaluates every selected property on every corpus member. Work is
/// spread over `jobs` threads (all cores when `None`); results are
/// assembled in corpus order.
pub fn run_corpus(
    corpus: &Corpus,
    props: &[PropertyDescriptor],
    jobs: Option<usize>,
    cap: usize,
) -> Result<RunReport, RunError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder.build()?;
    let per_lattice: Vec<Vec<(Outcome, Duration)>> = pool.install(|| {
        corpus
            .entries
            .par_iter()
            .map(|e| run_one(props, &e.id, &e.lattice, cap))
            .collect()
    });

    let mut reports: Vec<PropertyReport> = props
        .iter()
        .map(|p| PropertyReport {
            id: p.id.to_string(),
            anchor: p.anchor.to_string(),
            examined: corpus.entries.len(),
            hypothesis_hits: 0,
            violations: Vec::new(),
            elapsed_ms: 0,
            mandatory: p.mandatory,
        })
        .collect();
    let mut elapsed = vec![Duration::ZERO; props.len()];
    for (entry, outcomes) in corpus.entries.iter().zip(per_lattice) {
        for (i, (o, t)) in outcomes.into_iter().enumerate() {
            elapsed[i] += t;
            match o {
                Outcome::Skipped => {}
                Outcome::Holds => reports[i].hypothesis_hits += 1,
                Outcome::Violated(witness) => {
                    reports[i].hypothesis_hits += 1;
                    reports[i].violations.push(ViolationRecord {
                        lattice: entry.id.clone(),
                        witness,
                    });
                }
            }
        }
    }
    for (r, t) in reports.iter_mut().zip(elapsed) {
        r.elapsed_ms = t.as_millis() as u64;
    }
    let verdict = if reports.iter().any(|r| !r.passed()) {
        Verdict::Violation
    } else if reports.iter().any(|r| r.mandatory && r.vacuous()) {
        Verdict::Vacuous
    } else {
        Verdict::Pass
    };
    Ok(RunReport {
        manifest_digest: corpus.digest.clone(),
        properties: reports,
        verdict,
    })
}
