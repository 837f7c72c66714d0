use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter};
use std::path::{Path, PathBuf};

use idealforge::density::{det_irreducibility_experiment, section_roundtrip_experiment};
use idealforge::forge::{coverage_growth, generate_dataset, verify_record, DatasetRecord, DatasetSummary};
use idealforge::groebner::BuchbergerConfig;
use idealforge::parse::parse;
use idealforge::Ring;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::RunConfig;
use crate::{CliError, Command, ExperimentKind, Overrides};

const TOOL: &str = "idealforge";

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Generate {
            common,
            from_manifest,
            count,
            d_max,
            backend,
            s_max,
            degree_cap,
            out,
            emit_tokens,
            verify,
            no_verify,
            jobs,
        } => {
            let (mut cfg, manifest) = match &from_manifest {
                Some(path) => {
                    let m = Manifest::load(path)?;
                    (m.config.clone(), Some(m))
                }
                None => (base_config(&common)?, None),
            };
            apply_common(&mut cfg, &common);
            set(&mut cfg.count, count);
            set(&mut cfg.d_max, d_max);
            set(&mut cfg.generator.backend, backend.map(Into::into));
            set(&mut cfg.generator.s_max, s_max);
            set(&mut cfg.generator.degree_cap, degree_cap);
            if out.is_some() {
                cfg.output = out;
            }
            cfg.emit_tokens |= emit_tokens;
            if no_verify {
                cfg.verify = false;
            } else if verify {
                cfg.verify = true;
            }
            generate(&cfg, jobs.jobs, manifest.as_ref())
        }
        Command::Verify { path, report, max_pairs, jobs } => verify(&path, report.as_deref(), max_pairs, jobs.jobs),
        Command::Experiment { kind, common, trials, d, r, out, jobs } => {
            let mut cfg = base_config(&common)?;
            apply_common(&mut cfg, &common);
            let e = &mut cfg.experiment;
            set(&mut e.det_irreducibility.trials, trials);
            set(&mut e.section_roundtrip.trials, trials);
            set(&mut e.coverage_growth.records, trials);
            set(&mut e.det_irreducibility.d, d);
            set(&mut e.section_roundtrip.d, d);
            set(&mut e.det_irreducibility.r, r);
            experiment(kind, &cfg, out.as_deref(), jobs.jobs)
        }
        Command::Stats { path } => stats(&path),
    }
}

fn set<T>(slot: &mut T, v: Option<T>) {
    if let Some(v) = v {
        *slot = v;
    }
}

fn base_config(common: &Overrides) -> Result<RunConfig, CliError> {
    match &common.config {
        Some(p) => RunConfig::load(p),
        None => Ok(RunConfig::default()),
    }
}

fn apply_common(cfg: &mut RunConfig, common: &Overrides) {
    set(&mut cfg.n, common.n);
    set(&mut cfg.m, common.m);
    set(&mut cfg.field, common.field);
    set(&mut cfg.master_seed, common.seed);
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Hash of the configuration without its output location.
fn config_hash(cfg: &RunConfig) -> String {
    let mut c = cfg.clone();
    c.output = None;
    sha256_hex(serde_json::to_string(&c).expect("config serializes").as_bytes())
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".manifest.json");
    PathBuf::from(s)
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Manifest {
    tool: String,
    version: String,
    config: RunConfig,
    config_sha256: String,
    master_seed: u64,
    output_sha256: String,
    summary: DatasetSummary,
}

impl Manifest {
    fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Validation(format!("jobs: {e}")))
}

fn generate(cfg: &RunConfig, jobs: usize, manifest: Option<&Manifest>) -> Result<(), CliError> {
    cfg.validate_generate()?;
    let out = cfg.output.clone().ok_or_else(|| CliError::Validation("output: an output path is required".into()))?;
    let opts = cfg.dataset_options(jobs);
    let file = File::create(&out).map_err(|e| io_err(&out, e))?;
    let mut w = BufWriter::new(file);
    let summary = generate_dataset(&opts, &mut w)?;
    drop(w);
    let bytes = std::fs::read(&out).map_err(|e| io_err(&out, e))?;
    let m = Manifest {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        config: cfg.clone(),
        config_sha256: config_hash(cfg),
        master_seed: cfg.master_seed,
        output_sha256: sha256_hex(&bytes),
        summary,
    };
    let mpath = manifest_path(&out);
    let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
    std::fs::write(&mpath, text + "\n").map_err(|e| io_err(&mpath, e))?;
    eprintln!(
        "wrote {} records to {} (pass rate {:.3}); manifest {}",
        m.summary.count,
        out.display(),
        m.summary.pass_rate,
        mpath.display()
    );
    if let Some(orig) = manifest {
        if orig.config_sha256 == m.config_sha256 && orig.output_sha256 != m.output_sha256 {
            return Err(CliError::Verification("output differs from the manifest it was reproduced from".into()));
        }
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct RecordReport {
    line: usize,
    idx: u64,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    records: usize,
    passed: usize,
    failed: usize,
    results: Vec<RecordReport>,
}

fn read_records(path: &Path) -> Result<Vec<(usize, DatasetRecord)>, CliError> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| io_err(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = DatasetRecord::from_json_line(&line)
            .map_err(|e| CliError::Validation(format!("{}: line {}: {e}", path.display(), i + 1)))?;
        out.push((i + 1, rec));
    }
    Ok(out)
}

fn verify(path: &Path, report: Option<&Path>, max_pairs: usize, jobs: usize) -> Result<(), CliError> {
    let records = read_records(path)?;
    let gb = BuchbergerConfig { max_pairs };
    let results: Vec<RecordReport> = pool(jobs)?.install(|| {
        records
            .par_iter()
            .map(|(line, rec)| {
                let reason = match verify_record(rec, &gb) {
                    Ok(check) => check.failure().map(String::from),
                    Err(idealforge::Error::BudgetExceeded(_)) => Some("budget_exceeded".into()),
                    Err(e) => Some(format!("error: {e}")),
                };
                RecordReport { line: *line, idx: rec.idx, pass: reason.is_none(), reason }
            })
            .collect()
    });
    for r in &results {
        match &r.reason {
            None => println!("record {} (line {}): PASS", r.idx, r.line),
            Some(why) => println!("record {} (line {}): FAIL {why}", r.idx, r.line),
        }
    }
    let passed = results.iter().filter(|r| r.pass).count();
    let rep = VerifyReport { records: results.len(), passed, failed: results.len() - passed, results };
    println!("{} records, {} passed, {} failed", rep.records, rep.passed, rep.failed);
    if let Some(p) = report {
        let text = serde_json::to_string_pretty(&rep).expect("report serializes");
        std::fs::write(p, text + "\n").map_err(|e| io_err(p, e))?;
    }
    if rep.failed > 0 {
        return Err(CliError::Verification(format!("{} of {} records failed", rep.failed, rep.records)));
    }
    Ok(())
}

#[derive(Serialize)]
struct ExperimentOutput<C: Serialize, R: Serialize> {
    experiment: ExperimentKind,
    tool_version: &'static str,
    config: C,
    report: R,
}

impl Serialize for ExperimentKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use clap::ValueEnum;
        s.serialize_str(self.to_possible_value().expect("named").get_name())
    }
}

fn emit(value: &impl Serialize, out: Option<&Path>) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("report serializes");
    match out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| io_err(p, e)),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn experiment(kind: ExperimentKind, cfg: &RunConfig, out: Option<&Path>, jobs: usize) -> Result<(), CliError> {
    cfg.field.validate()?;
    let version = env!("CARGO_PKG_VERSION");
    let pool = pool(jobs)?;
    match kind {
        ExperimentKind::DetIrreducibility => {
            let c = cfg.det_config();
            let report = pool.install(|| det_irreducibility_experiment(&c))?;
            if report.unknown_fraction > 0.5 {
                eprintln!(
                    "warning: {:.0}% of determinants are outside the oracle's range",
                    100.0 * report.unknown_fraction
                );
            }
            emit(&ExperimentOutput { experiment: kind, tool_version: version, config: c, report }, out)
        }
        ExperimentKind::SectionRoundtrip => {
            let c = cfg.section_config();
            let report = pool.install(|| section_roundtrip_experiment(&c))?;
            let failed = report.trials - report.passed;
            emit(&ExperimentOutput { experiment: kind, tool_version: version, config: c, report }, out)?;
            if failed > 0 {
                return Err(CliError::Verification(format!("{failed} round trips failed")));
            }
            Ok(())
        }
        ExperimentKind::CoverageGrowth => {
            let c = &cfg.experiment.coverage_growth;
            let ring = Ring::new(cfg.n, cfg.field);
            let g = c
                .g
                .iter()
                .enumerate()
                .map(|(i, s)| parse(s, ring).map_err(|e| CliError::Validation(format!("experiment.coverage_growth.g[{i}]: {e}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let report = coverage_growth(&g, c.m, &c.s_values, c.records, cfg.master_seed, jobs)?;
            #[derive(Serialize)]
            struct CoverageConfig<'a> {
                field: idealforge::FieldConfig,
                n: usize,
                master_seed: u64,
                #[serde(flatten)]
                section: &'a crate::config::CoverageSection,
            }
            let config = CoverageConfig { field: cfg.field, n: cfg.n, master_seed: cfg.master_seed, section: c };
            emit(&ExperimentOutput { experiment: kind, tool_version: version, config, report }, out)
        }
    }
}

fn stats(path: &Path) -> Result<(), CliError> {
    let mut summary = DatasetSummary::default();
    for (_, rec) in read_records(path)? {
        summary.add(&rec);
    }
    emit(&summary, None)
}
