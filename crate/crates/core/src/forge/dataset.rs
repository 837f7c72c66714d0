use std::collections::{BTreeMap, HashSet};
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{generate_record, generate_record_bruhat, Backend, DatasetRecord, GenConfig};
use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::monomial::MonomialOrder;
use crate::parse::render;
use crate::poly::Polynomial;
use crate::sampling::{derive_seed, rng_from_seed, CoeffDistribution};
use crate::shape::{sample_with_config, ShapeConfig};

/// Records generated per parallel batch; output order never depends on it.
const BATCH: usize = 256;

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetOptions {
    pub count: u64,
    pub master_seed: u64,
    pub field: FieldConfig,
    pub shape: ShapeConfig,
    pub gen: GenConfig,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
    pub with_tokens: bool,
}

impl DatasetOptions {
    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidArgument("count must be at least 1".into()));
        }
        self.field.validate()?;
        self.shape.validate(self.field)?;
        self.gen.validate(self.field)?;
        if self.shape.d_max > self.gen.degree_cap {
            return Err(Error::InvalidArgument(format!(
                "shape d_max {} exceeds degree_cap {}",
                self.shape.d_max, self.gen.degree_cap
            )));
        }
        Ok(())
    }
}

/// Record `idx`: its seed is `derive_seed(master, idx)`; `G` is drawn from
/// `derive_seed(record_seed, 0)` and the transformation from `record_seed`.
pub fn generate_one(opts: &DatasetOptions, idx: u64) -> Result<DatasetRecord> {
    let record_seed = derive_seed(opts.master_seed, idx);
    let mut shape_rng = rng_from_seed(derive_seed(record_seed, 0));
    let g = sample_with_config(opts.field, opts.gen.n, &opts.shape, &mut shape_rng)?.generators();
    let mut rec = match opts.gen.backend {
        Backend::ElementaryProduct => generate_record(&g, &opts.gen, record_seed)?,
        Backend::Bruhat => generate_record_bruhat(&g, &opts.gen, record_seed)?,
    };
    rec.idx = idx;
    Ok(rec)
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub count: u64,
    pub verified: u64,
    /// Fraction of records that passed verification (0 when disabled).
    pub pass_rate: f64,
    pub degree_histogram: BTreeMap<u32, u64>,
    pub coeff_bits_histogram: BTreeMap<u64, u64>,
    pub s_histogram: BTreeMap<u32, u64>,
}

impl DatasetSummary {
    pub fn add(&mut self, rec: &DatasetRecord) {
        self.count += 1;
        self.verified += rec.stats.verified as u64;
        *self.degree_histogram.entry(rec.stats.max_deg_f.unwrap_or(0)).or_default() += 1;
        *self.coeff_bits_histogram.entry(rec.stats.max_coeff_bits).or_default() += 1;
        *self.s_histogram.entry(rec.stats.s).or_default() += 1;
        self.pass_rate = self.verified as f64 / self.count as f64;
    }
}

/// Generates records `0..count` in parallel and hands them to `sink` in
/// index order.
pub fn for_each_record(opts: &DatasetOptions, mut sink: impl FnMut(DatasetRecord) -> Result<()>) -> Result<()> {
    opts.validate()?;
    let pool = pool(opts.jobs)?;
    let mut start = 0;
    while start < opts.count {
        let end = (start + BATCH as u64).min(opts.count);
        let batch: Vec<Result<DatasetRecord>> =
            pool.install(|| (start..end).into_par_iter().map(|i| generate_one(opts, i)).collect());
        for rec in batch {
            sink(rec?)?;
        }
        start = end;
    }
    Ok(())
}

/// Writes one JSON line per record.
pub fn generate_dataset<W: Write>(opts: &DatasetOptions, out: &mut W) -> Result<DatasetSummary> {
    let mut summary = DatasetSummary::default();
    for_each_record(opts, |rec| {
        writeln!(out, "{}", rec.to_json_line(opts.with_tokens))
            .map_err(|e| Error::Io { index: rec.idx, msg: e.to_string() })?;
        summary.add(&rec);
        Ok(())
    })?;
    out.flush().map_err(|e| Error::Io { index: opts.count, msg: e.to_string() })?;
    Ok(summary)
}

pub fn generate_records(opts: &DatasetOptions) -> Result<Vec<DatasetRecord>> {
    let mut v = Vec::with_capacity(opts.count as usize);
    for_each_record(opts, |rec| {
        v.push(rec);
        Ok(())
    })?;
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveragePoint {
    pub s_max: u32,
    pub records: u64,
    pub distinct_f: u64,
}

/// Distinct generator sets `F` produced for a fixed `G` as `s_max` grows.
/// Coefficients come from `{-1, 0, 1}` and verification is skipped; only
/// the variety of `F` is measured.
pub fn coverage_growth(
    g: &[Polynomial],
    m: usize,
    s_values: &[u32],
    records: u64,
    master_seed: u64,
    jobs: usize,
) -> Result<Vec<CoveragePoint>> {
    let n = g.len();
    let ring = g.first().ok_or_else(|| Error::InvalidArgument("empty G".into()))?.ring();
    let order = MonomialOrder::lex(ring.nvars);
    let pool = pool(jobs)?;
    s_values
        .iter()
        .map(|&s_max| {
            let cfg = GenConfig {
                n,
                m,
                s_min: 1,
                s_max,
                coeffs: CoeffDistribution::int_box(-1, 1, 0.0),
                verify: false,
                degree_cap: 64,
                ..GenConfig::default()
            };
            let keys: Vec<Vec<String>> = pool.install(|| {
                (0..records)
                    .into_par_iter()
                    .map(|i| {
                        let rec = generate_record(g, &cfg, derive_seed(master_seed, i))?;
                        Ok(rec.f.iter().map(|f| render(f, &order)).collect())
                    })
                    .collect::<Result<_>>()
            })?;
            let distinct = keys.into_iter().collect::<HashSet<_>>().len() as u64;
            Ok(CoveragePoint { s_max, records, distinct_f: distinct })
        })
        .collect()
}
