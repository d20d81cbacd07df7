//! Seeded, resumable search over m-primary ideals hunting a Ratliff-Rush gap
//! in degree two (`̃I² ⊄ I`) and cataloging the degree-zero Bockstein data.
//!
//! Candidate `index` determines a candidate from `(seed, attempt)` alone, so
//! the catalog is byte-identical regardless of worker count.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::bockstein_table;
use crate::filtration::FiltrationData;
use crate::monomial::{rr_closure, MonomialIdeal};
use crate::policy::{CertStatus, StabilizationPolicy};
use crate::semigroup::{NumericalSemigroup, SemigroupIdeal};

#[derive(Debug, Error)]
pub enum ExplorerError {
    #[error("bad search configuration: {0}")]
    BadConfig(String),
    #[error("catalog write failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("worker pool construction failed: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum BackendConfig {
    Poly { nvars: usize },
    Semigroup { max_gen: u64 },
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub backend: BackendConfig,
    pub max_degree: u32,
    pub count: usize,
    pub seed: u64,
    pub policy: StabilizationPolicy,
    pub workers: usize,
    pub output: PathBuf,
    /// When true, per-candidate wall-clock times are recorded; the default is
    /// false so reruns produce byte-identical catalogs.
    pub record_timings: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdicts {
    pub rr_gap_found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bh0_nonzero: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchRecord {
    pub schema_version: u32,
    pub backend: String,
    pub descriptor: serde_json::Value,
    pub verdicts: Verdicts,
    pub cert: CertStatus,
    pub elapsed_ms: u64,
    pub seed: u64,
    pub index: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSummary {
    pub records: usize,
    pub hits: usize,
    pub uncertified: usize,
}

/// A generated candidate, already canonical.
#[derive(Debug, Clone)]
pub enum Candidate {
    Poly(MonomialIdeal),
    Semigroup {
        sg_gens: Vec<u64>,
        ideal: SemigroupIdeal,
    },
}

impl Candidate {
    pub fn descriptor(&self) -> serde_json::Value {
        match self {
            Candidate::Poly(ideal) => serde_json::json!({
                "nvars": ideal.nvars(),
                "gens": ideal.generators(),
            }),
            Candidate::Semigroup { sg_gens, ideal } => serde_json::json!({
                "semigroup": sg_gens,
                "ideal": ideal.minimal_generators(),
            }),
        }
    }
}

fn mix(seed: u64, attempt: u64) -> u64 {
    // splitmix64 finalizer over the (seed, attempt) pair
    let mut z = seed ^ attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn poly_candidate(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> MonomialIdeal {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for i in 0..nvars {
        let mut g = vec![0u32; nvars];
        g[i] = rng.gen_range(2..=max_degree);
        gens.push(g);
    }
    let extra = rng.gen_range(0..=nvars + 1);
    for _ in 0..extra {
        let total = rng.gen_range(2..=max_degree);
        let mut g = vec![0u32; nvars];
        for _ in 0..total {
            g[rng.gen_range(0..nvars)] += 1;
        }
        gens.push(g);
    }
    MonomialIdeal::new(nvars, gens).expect("pure powers present")
}

fn semigroup_candidate(
    rng: &mut ChaCha8Rng,
    max_gen: u64,
) -> Option<(Vec<u64>, SemigroupIdeal)> {
    let count = rng.gen_range(2..=3usize);
    let gens: Vec<u64> = (0..count).map(|_| rng.gen_range(2..=max_gen)).collect();
    let sg = NumericalSemigroup::from_generators(&gens).ok()?;
    let members: Vec<u64> = sg
        .members_below(sg.conductor() + 2 * max_gen + 1)
        .into_iter()
        .filter(|&x| x > 0)
        .collect();
    let ideal_count = rng.gen_range(2..=4usize);
    let exps: Vec<u64> = (0..ideal_count)
        .map(|_| members[rng.gen_range(0..members.len())])
        .collect();
    let ideal = SemigroupIdeal::from_exponents(Arc::clone(&sg), &exps).ok()?;
    Some((sg.generators().to_vec(), ideal))
}

/// Deterministic candidate sequence: pseudo-random m-primary ideals derived
/// from `(seed, attempt)` only, deduplicated by canonical form with
/// replacement until `count` distinct candidates exist.
pub fn generate_candidates(config: &SearchConfig) -> Result<Vec<Candidate>, ExplorerError> {
    if config.count < 1 {
        return Err(ExplorerError::BadConfig("count must be at least 1".into()));
    }
    if config.max_degree < 2 {
        return Err(ExplorerError::BadConfig("max_degree must be at least 2".into()));
    }
    if let BackendConfig::Poly { nvars } = config.backend {
        if !(1..=8).contains(&nvars) {
            return Err(ExplorerError::BadConfig("nvars must be in 1..=8".into()));
        }
    }

    let mut seen: HashSet<String> = HashSet::new();
    let mut out: Vec<Candidate> = Vec::with_capacity(config.count);
    let mut attempt = 0u64;
    while out.len() < config.count {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(config.seed, attempt));
        attempt += 1;
        let candidate = match &config.backend {
            BackendConfig::Poly { nvars } => {
                Candidate::Poly(poly_candidate(&mut rng, *nvars, config.max_degree))
            }
            BackendConfig::Semigroup { max_gen } => {
                match semigroup_candidate(&mut rng, *max_gen) {
                    Some((sg_gens, ideal)) => Candidate::Semigroup { sg_gens, ideal },
                    None => continue,
                }
            }
        };
        let key = candidate.descriptor().to_string();
        if seen.insert(key) {
            out.push(candidate);
        }
    }
    Ok(out)
}

fn evaluate(candidate: &Candidate, policy: &StabilizationPolicy) -> (Verdicts, CertStatus) {
    match candidate {
        Candidate::Poly(ideal) => match rr_closure(ideal, 2, policy) {
            Ok((closure2, cert)) => {
                let contained = ideal
                    .contains_ideal(&closure2)
                    .expect("same polynomial ring");
                (Verdicts { rr_gap_found: !contained, bh0_nonzero: None }, cert)
            }
            Err(_) => (
                Verdicts { rr_gap_found: false, bh0_nonzero: None },
                CertStatus::CapReached,
            ),
        },
        Candidate::Semigroup { ideal, .. } => {
            match FiltrationData::analyze(ideal.clone(), policy) {
                Ok(fd) => {
                    let closure2 = fd.rr.closure(&fd.cache, 2);
                    let contained = fd
                        .cache
                        .power(1)
                        .contains_ideal(&closure2)
                        .expect("same semigroup");
                    let bh0_nonzero = bockstein_table(&fd)
                        .map(|t| t.bh0_total > 0)
                        .unwrap_or(false);
                    let cert = if fd.rr.certified {
                        CertStatus::Stable
                    } else {
                        CertStatus::CapReached
                    };
                    (
                        Verdicts { rr_gap_found: !contained, bh0_nonzero: Some(bh0_nonzero) },
                        cert,
                    )
                }
                Err(_) => (
                    Verdicts { rr_gap_found: false, bh0_nonzero: Some(false) },
                    CertStatus::CapReached,
                ),
            }
        }
    }
}

/// Runs the search and writes the JSONL catalog (one record per line, sorted
/// by candidate index). A certified polynomial-backend gap is flagged loudly
/// on stderr: it would answer an open question.
pub fn run_search(config: &SearchConfig) -> Result<SearchSummary, ExplorerError> {
    let candidates = generate_candidates(config)?;
    let backend_name = match &config.backend {
        BackendConfig::Poly { .. } => "poly",
        BackendConfig::Semigroup { .. } => "semigroup",
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()?;
    let policy = config.policy;
    let record_timings = config.record_timings;
    let seed = config.seed;
    let mut records: Vec<SearchRecord> = pool.install(|| {
        use rayon::prelude::*;
        candidates
            .par_iter()
            .enumerate()
            .map(|(index, candidate)| {
                let start = Instant::now();
                let (verdicts, cert) = evaluate(candidate, &policy);
                let elapsed_ms = if record_timings {
                    start.elapsed().as_millis() as u64
                } else {
                    0
                };
                SearchRecord {
                    schema_version: 1,
                    backend: backend_name.to_string(),
                    descriptor: candidate.descriptor(),
                    verdicts,
                    cert,
                    elapsed_ms,
                    seed,
                    index: index as u64,
                }
            })
            .collect()
    });
    records.sort_by_key(|r| r.index);

    let mut hits = 0usize;
    let mut uncertified = 0usize;
    for record in &records {
        if !record.cert.is_stable() {
            uncertified += 1;
        } else if record.verdicts.rr_gap_found {
            hits += 1;
            if backend_name == "poly" {
                eprintln!(
                    "*** certified Ratliff-Rush gap on a polynomial monomial ideal: {}",
                    record.descriptor
                );
            }
        }
    }

    let file = File::create(&config.output)?;
    let mut writer = BufWriter::new(file);
    for record in &records {
        serde_json::to_writer(&mut writer, record).map_err(std::io::Error::from)?;
        writer.write_all(b"\n")?;
    }
    writer.flush()?;

    Ok(SearchSummary { records: records.len(), hits, uncertified })
}
