//! Pair searches over ranges of `r`, output files, checkpointing and the
//! reproduction of the reference tables.
//!
//! A search runs in two stages per block of consecutive odd `r`: records are
//! bucketed by `(|r|, |s|, p1)` (without `p1` for homotopy searches), then
//! every pair inside a bucket is compared. Kreck–Stolz invariants are only
//! computed for spaces that landed in a bucket with at least two members.

mod checkpoint;
pub mod output;
pub mod tables;

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::classify::{basic_match, bucket_key, compare, is_monotone, PairVerdict, Threshold};
use crate::enumerate::{enum_block, EnumerationRequest};
use crate::error::{Error, Result};
use crate::invariants::{basic_record, InvariantRecord};
use crate::par::Workers;

pub use output::Format;
pub use tables::{reproduce_table, TableReport, TABLE_IDS};

pub const DEFAULT_BLOCK_SIZE: usize = 1000;

/// Thread count from `ESCH_THREADS`, else the available parallelism.
pub fn default_threads() -> usize {
    std::env::var("ESCH_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&n: &usize| n >= 1)
        .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
        .unwrap_or(1)
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub request: EnumerationRequest,
    pub threshold: Threshold,
    threads: usize,
    /// Odd values of `r` per block.
    pub block_size: usize,
    pub checkpoint_dir: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl SearchConfig {
    pub fn new(request: EnumerationRequest, threshold: Threshold) -> Self {
        SearchConfig {
            request,
            threshold,
            threads: default_threads(),
            block_size: DEFAULT_BLOCK_SIZE,
            checkpoint_dir: None,
            out: None,
            format: Format::Json,
        }
    }

    pub fn with_threads(mut self, threads: usize) -> Result<Self> {
        if threads == 0 {
            return Err(Error::ZeroThreads);
        }
        self.threads = threads;
        Ok(self)
    }

    pub fn threads(&self) -> usize {
        self.threads
    }
}

/// Two spaces of the same order whose invariants reach the threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub r: i64,
    pub a: InvariantRecord,
    pub b: InvariantRecord,
    /// `None` for basic-match searches, which skip the Kreck–Stolz stage.
    pub verdict: Option<PairVerdict>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub spaces: u64,
    pub condition_c_failures: u64,
    /// Within-bucket pairs examined in stage two.
    pub candidate_pairs: u64,
    pub reported: u64,
    /// Candidate pairs with a member failing condition (C).
    pub unclassified: u64,
}

impl SearchStats {
    fn add(&mut self, o: &SearchStats) {
        self.spaces += o.spaces;
        self.condition_c_failures += o.condition_c_failures;
        self.candidate_pairs += o.candidate_pairs;
        self.reported += o.reported;
        self.unclassified += o.unclassified;
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub reports: Vec<PairReport>,
    /// Candidate pairs that could not be classified because a member fails
    /// condition (C).
    pub unclassified: Vec<PairReport>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct BlockResult {
    lo: i64,
    hi: i64,
    outcome: SearchOutcome,
}

/// Runs the search, resuming from and writing checkpoint shards when a
/// checkpoint directory is set. Output is independent of the thread count.
pub fn search_pairs(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let workers = Workers::new(cfg.threads);
    let blocks = cfg.request.blocks(cfg.block_size);
    let mut total = SearchOutcome::default();
    for (i, &(lo, hi)) in blocks.iter().enumerate() {
        let shard = cfg
            .checkpoint_dir
            .as_ref()
            .map(|dir| checkpoint::shard_path(dir, cfg, lo, hi));
        let cached = match &shard {
            Some(path) => checkpoint::load(path, lo, hi)?,
            None => None,
        };
        let block = match cached {
            Some(b) => {
                log::info!("block {}/{} r=[{lo},{hi}] resumed", i + 1, blocks.len());
                b
            }
            None => {
                let b = run_block(cfg, lo, hi, &workers)?;
                if let Some(path) = &shard {
                    checkpoint::store(path, &b)?;
                }
                log::info!(
                    "block {}/{} r=[{lo},{hi}]: {} spaces, {} reported",
                    i + 1,
                    blocks.len(),
                    b.outcome.stats.spaces,
                    b.outcome.stats.reported
                );
                b
            }
        };
        total.stats.add(&block.outcome.stats);
        total.reports.extend(block.outcome.reports);
        total.unclassified.extend(block.outcome.unclassified);
    }
    Ok(total)
}

/// Every space of the request with its invariant record, Kreck–Stolz
/// invariants included when `with_ks` is set and condition (C) holds.
pub fn enumerate_records(
    request: &EnumerationRequest,
    threads: usize,
    with_ks: bool,
) -> Result<Vec<InvariantRecord>> {
    if threads == 0 {
        return Err(Error::ZeroThreads);
    }
    let workers = Workers::new(threads);
    let mut out = Vec::new();
    for (lo, hi) in request.blocks(DEFAULT_BLOCK_SIZE) {
        let spaces = enum_block(request.family, lo, hi, &workers);
        let recs = workers.map(&spaces, |s| {
            let rec = basic_record(&s.params())?;
            if with_ks {
                rec.with_ks()
            } else {
                Ok(rec)
            }
        });
        for rec in recs {
            out.push(rec?);
        }
    }
    Ok(out)
}

/// [`search_pairs`], then writes the reports to `cfg.out` if set.
pub fn run(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let outcome = search_pairs(cfg)?;
    if let Some(path) = &cfg.out {
        output::write_pairs_file(path, cfg.format, &outcome.reports)?;
    }
    Ok(outcome)
}

fn pair_key(p: &PairReport) -> (i64, crate::spaces::ParamPair, crate::spaces::ParamPair) {
    (p.r, p.a.params, p.b.params)
}

fn run_block(cfg: &SearchConfig, lo: i64, hi: i64, workers: &Workers) -> Result<BlockResult> {
    let spaces = enum_block(cfg.request.family, lo, hi, workers);
    let records = workers
        .map(&spaces, |s| basic_record(&s.params()))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut stats = SearchStats {
        spaces: records.len() as u64,
        condition_c_failures: records.iter().filter(|r| r.condition_c_fails()).count() as u64,
        ..SearchStats::default()
    };

    let mut buckets: BTreeMap<(i64, i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, rec) in records.iter().enumerate() {
        buckets
            .entry(bucket_key(rec, cfg.threshold))
            .or_default()
            .push(i);
    }
    buckets.retain(|_, members| members.len() >= 2);

    let candidates: Vec<usize> = buckets.values().flatten().copied().collect();
    let mut full: BTreeMap<usize, InvariantRecord> = BTreeMap::new();
    let needs_ks = cfg.threshold.relation().is_some();
    let computed = workers.map(&candidates, |&i| {
        let rec = records[i].clone();
        if needs_ks {
            rec.with_ks()
        } else {
            Ok(rec)
        }
    });
    for (i, rec) in candidates.iter().zip(computed) {
        full.insert(*i, rec?);
    }

    let mut reports = Vec::new();
    let mut unclassified = Vec::new();
    for members in buckets.values() {
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                stats.candidate_pairs += 1;
                let (mut a, mut b) = (&full[&i], &full[&j]);
                if a.params > b.params {
                    std::mem::swap(&mut a, &mut b);
                }
                let r = a.basic.r_abs;
                match cfg.threshold.relation() {
                    None => {
                        if basic_match(a, b) {
                            reports.push(PairReport {
                                r,
                                a: a.clone(),
                                b: b.clone(),
                                verdict: None,
                            });
                        }
                    }
                    Some(min) => {
                        let v = compare(a, b);
                        let report = |v| PairReport {
                            r,
                            a: a.clone(),
                            b: b.clone(),
                            verdict: Some(v),
                        };
                        if !v.classifiable {
                            log::warn!(
                                "r={r}: pair {} / {} not classifiable, condition (C) fails",
                                a.params,
                                b.params
                            );
                            unclassified.push(report(v));
                            continue;
                        }
                        assert!(
                            is_monotone(&v),
                            "non-monotone verdict for {} / {}",
                            a.params,
                            b.params
                        );
                        if v.relation >= min {
                            reports.push(report(v));
                        }
                    }
                }
            }
        }
    }
    reports.sort_by_key(pair_key);
    unclassified.sort_by_key(pair_key);
    stats.reported = reports.len() as u64;
    stats.unclassified = unclassified.len() as u64;
    Ok(BlockResult {
        lo,
        hi,
        outcome: SearchOutcome {
            reports,
            unclassified,
            stats,
        },
    })
}
