//! Run configuration: a TOML document, overridden by command-line flags,
//! validated as a whole before any work starts.

use std::path::{Path, PathBuf};

use idealforge::density::{DetExperimentConfig, OracleBudget, SectionExperimentConfig};
use idealforge::forge::{Backend, DatasetOptions, GenConfig, OpMix};
use idealforge::sampling::CoeffDistribution;
use idealforge::shape::ShapeConfig;
use idealforge::FieldConfig;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeneratorSection {
    pub backend: Backend,
    pub s_min: u32,
    pub s_max: u32,
    pub op_mix: OpMix,
    pub addrow_poly_degree_max: u32,
    pub degree_cap: u32,
    pub forbid_zero_rows: bool,
    pub gb_max_pairs: usize,
    /// Coefficients of the transformation; `G` uses the top-level `coeffs`.
    pub coeffs: Option<CoeffDistribution>,
}

impl Default for GeneratorSection {
    fn default() -> Self {
        let g = GenConfig::default();
        GeneratorSection {
            backend: g.backend,
            s_min: g.s_min,
            s_max: g.s_max,
            op_mix: g.op_mix,
            addrow_poly_degree_max: g.addrow_poly_degree_max,
            degree_cap: g.degree_cap,
            forbid_zero_rows: g.forbid_zero_rows,
            gb_max_pairs: g.gb_max_pairs,
            coeffs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CoverageSection {
    pub m: usize,
    pub s_values: Vec<u32>,
    pub records: u64,
    /// Fixed `G`, written in the polynomial syntax over `field`.
    pub g: Vec<String>,
}

impl Default for CoverageSection {
    fn default() -> Self {
        CoverageSection { m: 3, s_values: vec![1, 2, 3, 4], records: 10_000, g: vec!["x1 - x2".into(), "x2^2 - 1".into()] }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentSection {
    pub det_irreducibility: DetSection,
    pub section_roundtrip: SectionSection,
    pub coverage_growth: CoverageSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DetSection {
    pub d: u32,
    pub r: usize,
    pub trials: u64,
    pub coeffs: CoeffDistribution,
    pub budget: OracleBudget,
}

impl Default for DetSection {
    fn default() -> Self {
        let c = DetExperimentConfig::default();
        DetSection { d: c.d, r: c.r, trials: c.trials, coeffs: c.coeffs, budget: c.budget }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SectionSection {
    pub d: u32,
    pub trials: u64,
}

impl Default for SectionSection {
    fn default() -> Self {
        let c = SectionExperimentConfig::default();
        SectionSection { d: c.d, trials: c.trials }
    }
}

/// Every setting of a run. Field names double as TOML keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub field: FieldConfig,
    /// Number of variables and of polynomials in `G`.
    pub n: usize,
    /// Number of polynomials in `F`.
    pub m: usize,
    pub d_max: u32,
    pub count: u64,
    pub master_seed: u64,
    pub output: Option<PathBuf>,
    pub emit_tokens: bool,
    pub verify: bool,
    /// Coefficients of `G` (and of experiment matrices unless overridden).
    pub coeffs: CoeffDistribution,
    pub generator: GeneratorSection,
    pub experiment: ExperimentSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldConfig::Rationals,
            n: 2,
            m: 3,
            d_max: 3,
            count: 100,
            master_seed: 0,
            output: None,
            emit_tokens: false,
            verify: true,
            coeffs: CoeffDistribution::default(),
            generator: GeneratorSection::default(),
            experiment: ExperimentSection::default(),
        }
    }
}

fn invalid(path: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Validation(format!("{path}: {msg}"))
}

/// `Q`, `Fp:<p>` or `F<p>`.
pub fn parse_field(s: &str) -> Result<FieldConfig, String> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldConfig::Rationals);
    }
    let p = s
        .strip_prefix("Fp:")
        .or_else(|| s.strip_prefix("fp:"))
        .or_else(|| s.strip_prefix('F'))
        .ok_or_else(|| format!("field {s:?}: expected Q or Fp:<prime>"))?;
    let p: u64 = p.parse().map_err(|e| format!("field {s:?}: {e}"))?;
    FieldConfig::prime(p).map_err(|e| e.to_string())
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    pub fn gen_config(&self) -> GenConfig {
        let g = &self.generator;
        GenConfig {
            n: self.n,
            m: self.m,
            backend: g.backend,
            s_min: g.s_min,
            s_max: g.s_max,
            op_mix: g.op_mix.clone(),
            coeffs: g.coeffs.clone().unwrap_or_else(|| self.coeffs.clone()),
            addrow_poly_degree_max: g.addrow_poly_degree_max,
            degree_cap: g.degree_cap,
            forbid_zero_rows: g.forbid_zero_rows,
            verify: self.verify,
            gb_max_pairs: g.gb_max_pairs,
        }
    }

    pub fn dataset_options(&self, jobs: usize) -> DatasetOptions {
        DatasetOptions {
            count: self.count,
            master_seed: self.master_seed,
            field: self.field,
            shape: ShapeConfig { d_max: self.d_max, coeffs: self.coeffs.clone() },
            gen: self.gen_config(),
            jobs,
            with_tokens: self.emit_tokens,
        }
    }

    pub fn det_config(&self) -> DetExperimentConfig {
        let d = &self.experiment.det_irreducibility;
        DetExperimentConfig {
            n: self.n,
            d: d.d,
            r: d.r,
            trials: d.trials,
            coeffs: d.coeffs.clone(),
            seed: self.master_seed,
            field: self.field,
            budget: d.budget.clone(),
        }
    }

    pub fn section_config(&self) -> SectionExperimentConfig {
        let s = &self.experiment.section_roundtrip;
        SectionExperimentConfig {
            n: self.n,
            m: self.m,
            d: s.d,
            r: None,
            trials: s.trials,
            coeffs: self.coeffs.clone(),
            seed: self.master_seed,
            field: self.field,
        }
    }

    /// Checks of the generation settings, reported with their key paths.
    pub fn validate_generate(&self) -> Result<(), CliError> {
        self.field.validate().map_err(|e| invalid("field", e))?;
        if self.n == 0 {
            return Err(invalid("n", "n >= 1 required"));
        }
        if self.m < self.n {
            return Err(invalid("m", format!("m ≥ n required (m = {}, n = {})", self.m, self.n)));
        }
        if self.count == 0 {
            return Err(invalid("count", "count >= 1 required"));
        }
        if self.d_max == 0 {
            return Err(invalid("d_max", "d_max >= 1 required"));
        }
        self.coeffs.validate(self.field).map_err(|e| invalid("coeffs", e))?;
        let g = &self.generator;
        if g.s_min == 0 || g.s_min > g.s_max {
            return Err(invalid("generator.s_min", format!("1 <= s_min <= s_max required, got [{}, {}]", g.s_min, g.s_max)));
        }
        if let Some(c) = &g.coeffs {
            c.validate(self.field).map_err(|e| invalid("generator.coeffs", e))?;
        }
        if self.d_max > g.degree_cap {
            return Err(invalid(
                "generator.degree_cap",
                format!("degree_cap {} below d_max {}", g.degree_cap, self.d_max),
            ));
        }
        self.gen_config().validate(self.field).map_err(|e| invalid("generator.op_mix", e))
    }
}
