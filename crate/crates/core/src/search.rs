//! Reproducible search over quasi-cyclic base matrices for CSS-T pairs.
//!
//! Candidates are drawn (or enumerated) as base matrices, expanded, paired
//! with their maximal CSS-T partner, verified, measured, and classified.
//! Records are emitted in index order as JSON Lines with a fixed schema, and
//! the whole stream is a pure function of the configuration: every candidate
//! derives from `(seed, index)` alone, so reruns and parallel runs produce
//! byte-identical output.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::code::{LinearCode, MinWeight};
use crate::csst::{classify_density, is_csst_pair, max_csst_partner, DensityClass, QuantumParams};
use crate::error::Error;
use crate::qc::{expand_base, BaseMatrix, ShiftExponent, MAX_BLOCK_SIZE};
use crate::rng::SplitMix64;

/// Cap on the enumerate-mode candidate space (L+1)^{m·n}.
pub const MAX_ENUMERATION: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Visit every base matrix over Z_L ∪ {∞}, requires (L+1)^{mn} small.
    Enumerate,
    /// Draw `count` candidates from the seeded distribution.
    Sample { count: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub block_size: usize,
    pub block_rows: usize,
    pub block_cols: usize,
    /// Probability that an entry is ∞ rather than uniform on Z_L.
    pub infinity_density: f64,
    pub mode: SearchMode,
    pub seed: u64,
    /// Keep only candidates with k₁ − k₂ at least this.
    pub min_logical_k: usize,
    /// Codeword-enumeration budget for distance computations.
    pub distance_budget: u64,
    /// Read the expansion as a parity-check matrix (C₁ = its kernel)
    /// instead of as a generator.
    pub as_parity: bool,
    /// Worker threads for candidate evaluation; output order is index
    /// order regardless.
    pub threads: usize,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(2..=MAX_BLOCK_SIZE).contains(&self.block_size) {
            return Err(Error::Config(format!(
                "block size {} out of range [2, {MAX_BLOCK_SIZE}]",
                self.block_size
            )));
        }
        if self.block_rows == 0 || self.block_cols == 0 {
            return Err(Error::Config("base matrix shape must be nonzero".into()));
        }
        if !(0.0..=1.0).contains(&self.infinity_density) {
            return Err(Error::Config(format!(
                "infinity density {} outside [0, 1]",
                self.infinity_density
            )));
        }
        if self.threads == 0 {
            return Err(Error::Config("thread count must be positive".into()));
        }
        match self.mode {
            SearchMode::Sample { count } => {
                if count == 0 {
                    return Err(Error::Config("sample count must be positive".into()));
                }
            }
            SearchMode::Enumerate => {
                let _ = self.enumeration_size()?;
            }
        }
        Ok(())
    }

    fn enumeration_size(&self) -> Result<u64, Error> {
        let cells = self.block_rows * self.block_cols;
        let radix = self.block_size as u64 + 1;
        let mut total = 1u64;
        for _ in 0..cells {
            total = total.saturating_mul(radix);
            if total > MAX_ENUMERATION {
                return Err(Error::Config(format!(
                    "enumeration space ({radix}^{cells}) exceeds {MAX_ENUMERATION}"
                )));
            }
        }
        Ok(total)
    }

    fn candidate_count(&self) -> Result<u64, Error> {
        match self.mode {
            SearchMode::Sample { count } => Ok(count),
            SearchMode::Enumerate => self.enumeration_size(),
        }
    }
}

/// Classical code parameters as reported in search records.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub n: usize,
    pub k: usize,
    /// Exact minimum weight, or None when not computed (budget or k = 0).
    pub d: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Kept,
    Rejected(String),
}

impl Verdict {
    fn as_string(&self) -> String {
        match self {
            Verdict::Kept => "kept".into(),
            Verdict::Rejected(reason) => format!("rejected({reason})"),
        }
    }
}

/// One search result: the base matrix, derived code parameters, density
/// classes, verdict, and RNG provenance.
#[derive(Clone, Debug)]
pub struct CandidateRecord {
    pub index: u64,
    pub seed: u64,
    pub block_size: usize,
    pub base: BaseMatrix,
    pub c1: CodeParams,
    pub c2: CodeParams,
    pub quantum: Option<QuantumParams>,
    pub density_c1: DensityClass,
    pub density_c2_dual: DensityClass,
    pub verdict: Verdict,
    /// Index of the earlier kept record with the same canonical code pair,
    /// when this record is a duplicate. Duplicates are marked, not dropped.
    pub duplicate_of: Option<u64>,
}

#[derive(Serialize)]
struct RecordJson<'a> {
    index: u64,
    seed: u64,
    #[serde(rename = "L")]
    block_size: usize,
    base: String,
    c1: &'a CodeParams,
    c2: &'a CodeParams,
    quantum: &'a Option<QuantumParams>,
    density_c1: &'a DensityClass,
    density_c2_dual: &'a DensityClass,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    duplicate_of: Option<u64>,
}

impl CandidateRecord {
    /// Fixed-schema JSON Lines serialization (no trailing newline).
    pub fn to_json_line(&self) -> String {
        let json = RecordJson {
            index: self.index,
            seed: self.seed,
            block_size: self.block_size,
            base: self.base.to_string(),
            c1: &self.c1,
            c2: &self.c2,
            quantum: &self.quantum,
            density_c1: &self.density_c1,
            density_c2_dual: &self.density_c2_dual,
            verdict: self.verdict.as_string(),
            duplicate_of: self.duplicate_of,
        };
        serde_json::to_string(&json).expect("record serialization cannot fail")
    }
}

/// Tail summary of a search run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSummary {
    pub evaluated: u64,
    pub kept: u64,
    pub best_k: Option<usize>,
    pub best_d_lower: Option<usize>,
}

impl SearchSummary {
    pub fn to_json_line(&self) -> String {
        #[derive(Serialize)]
        struct Tail<'a> {
            summary: &'a SearchSummary,
        }
        serde_json::to_string(&Tail { summary: self }).expect("summary serialization cannot fail")
    }
}

/// Draw the candidate base matrix for `(cfg.seed, index)`. Each entry is
/// independently ∞ with probability `infinity_density`, else uniform on Z_L.
pub fn sample_base_matrix(cfg: &SearchConfig, index: u64) -> BaseMatrix {
    let mut rng = SplitMix64::for_candidate(cfg.seed, index);
    let entries = (0..cfg.block_rows * cfg.block_cols)
        .map(|_| {
            if rng.next_f64() < cfg.infinity_density {
                ShiftExponent::Infinity
            } else {
                ShiftExponent::Finite(rng.next_below(cfg.block_size as u64) as usize)
            }
        })
        .collect();
    BaseMatrix::new(cfg.block_size, cfg.block_rows, cfg.block_cols, entries)
        .expect("sampled entries are in range")
}

/// The `index`-th base matrix in enumerate mode: digits of `index` in base
/// L+1, row-major, with digit L standing for ∞.
pub fn enumerated_base_matrix(cfg: &SearchConfig, index: u64) -> BaseMatrix {
    let radix = cfg.block_size as u64 + 1;
    let mut x = index;
    let entries = (0..cfg.block_rows * cfg.block_cols)
        .map(|_| {
            let digit = (x % radix) as usize;
            x /= radix;
            if digit == cfg.block_size {
                ShiftExponent::Infinity
            } else {
                ShiftExponent::Finite(digit)
            }
        })
        .collect();
    BaseMatrix::new(cfg.block_size, cfg.block_rows, cfg.block_cols, entries)
        .expect("enumerated entries are in range")
}

fn candidate_base(cfg: &SearchConfig, index: u64) -> BaseMatrix {
    match cfg.mode {
        SearchMode::Sample { .. } => sample_base_matrix(cfg, index),
        SearchMode::Enumerate => enumerated_base_matrix(cfg, index),
    }
}

fn code_params(code: &LinearCode, budget: u64) -> CodeParams {
    let d = if code.k() == 0 {
        None
    } else {
        match code.min_weight(budget).expect("nonzero code") {
            MinWeight::Exact(w) => Some(w),
            MinWeight::NotComputed => None,
        }
    };
    CodeParams {
        n: code.n(),
        k: code.k(),
        d,
    }
}

struct Evaluated {
    record: CandidateRecord,
    /// Canonical generator pair of kept candidates, for duplicate marking.
    dedup_key: Option<String>,
}

fn evaluate_base(cfg: &SearchConfig, index: u64, base: BaseMatrix) -> Evaluated {
    let expansion = expand_base(&base);
    let c1 = if cfg.as_parity {
        LinearCode::from_parity_check(&expansion)
    } else {
        LinearCode::from_generator(&expansion)
    };
    let c2 = max_csst_partner(&c1);
    let report =
        is_csst_pair(&c1, &c2, cfg.distance_budget).expect("equal lengths by construction");
    assert!(report.is_pair, "maximal partner must verify");

    let logical_k = c1.k() - c2.k();
    let verdict = if c1.k() == 0 {
        Verdict::Rejected("zero code".into())
    } else if logical_k < cfg.min_logical_k {
        Verdict::Rejected(format!(
            "logical k {logical_k} below minimum {}",
            cfg.min_logical_k
        ))
    } else {
        Verdict::Kept
    };
    let dedup_key = (verdict == Verdict::Kept)
        .then(|| format!("{}|{}", c1.generator().to_text(), c2.generator().to_text()));

    let record = CandidateRecord {
        index,
        seed: cfg.seed,
        block_size: cfg.block_size,
        base,
        c1: code_params(&c1, cfg.distance_budget),
        c2: code_params(&c2, cfg.distance_budget),
        quantum: report.params,
        density_c1: classify_density(&expansion),
        density_c2_dual: classify_density(c2.generator()),
        verdict,
        duplicate_of: None,
    };
    Evaluated { record, dedup_key }
}

fn evaluate_index(cfg: &SearchConfig, index: u64) -> Evaluated {
    evaluate_base(cfg, index, candidate_base(cfg, index))
}

/// Evaluate one base matrix under the given configuration, outside of any
/// run (used to re-verify records from their serialized bases).
pub fn evaluate_candidate(cfg: &SearchConfig, base: &BaseMatrix) -> CandidateRecord {
    evaluate_base(cfg, 0, base.clone()).record
}

const CHUNK: u64 = 256;

/// Run the search, invoking `on_record` once per candidate in index order.
/// Evaluation may use a worker pool; the emitter restores index order, so
/// the record stream depends only on the configuration.
pub fn run_search(
    cfg: &SearchConfig,
    mut on_record: impl FnMut(&CandidateRecord),
) -> Result<SearchSummary, Error> {
    cfg.validate()?;
    let total = cfg.candidate_count()?;

    let pool = if cfg.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(cfg.threads)
                .build()
                .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut first_kept: HashMap<String, u64> = HashMap::new();
    let mut summary = SearchSummary {
        evaluated: 0,
        kept: 0,
        best_k: None,
        best_d_lower: None,
    };

    let mut start = 0u64;
    while start < total {
        let end = (start + CHUNK).min(total);
        let indices: Vec<u64> = (start..end).collect();
        let evaluated: Vec<Evaluated> = match &pool {
            Some(pool) => pool.install(|| {
                indices
                    .par_iter()
                    .map(|&i| evaluate_index(cfg, i))
                    .collect()
            }),
            None => indices.iter().map(|&i| evaluate_index(cfg, i)).collect(),
        };
        for mut item in evaluated {
            summary.evaluated += 1;
            if let Some(key) = item.dedup_key {
                match first_kept.get(&key) {
                    Some(&first) => item.record.duplicate_of = Some(first),
                    None => {
                        first_kept.insert(key, item.record.index);
                    }
                }
            }
            if item.record.verdict == Verdict::Kept {
                summary.kept += 1;
                if let Some(q) = &item.record.quantum {
                    summary.best_k = Some(summary.best_k.map_or(q.k, |b| b.max(q.k)));
                    if let Some(d) = q.d_lower {
                        summary.best_d_lower =
                            Some(summary.best_d_lower.map_or(d, |b| b.max(d)));
                    }
                }
            }
            on_record(&item.record);
        }
        start = end;
    }
    Ok(summary)
}
