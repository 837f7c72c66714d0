//! Random generators of `<G>`: `F = U [E_n; O] G` with `U` a product of
//! random elementary matrices, or the Bruhat-like `F = U1 S [U2; O] G`.
//! Every record carries its trace so `F` and a left inverse of the
//! transformation can be recomputed and checked exactly.

mod dataset;
mod record;
pub mod tokens;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub use dataset::{
    coverage_growth, for_each_record, generate_dataset, generate_one, generate_records, CoveragePoint, DatasetOptions,
    DatasetSummary,
};
pub use record::{DatasetRecord, RecordJson, RecordStats, Trace, TraceEntry};

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::groebner::{ideal_equal, BuchbergerConfig};
use crate::monomial::{monomials_up_to, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::polymat::{apply_product, bruhat_compose, left_inverse_from_trace, ElementaryOp, Permutation, PolyMatrix};
use crate::sampling::{rng_from_seed, CoeffDistribution, RecordRng};

/// Retries for a single elementary op whose application breaks the degree cap.
pub const OP_RETRIES: usize = 20;
/// Whole-record attempts (zero rows, or Bruhat triples over the degree cap).
pub const RECORD_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    ElementaryProduct,
    Bruhat,
}

/// Relative frequencies of the three elementary-matrix kinds.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OpMix {
    pub add_row: f64,
    pub permute: f64,
    pub scale: f64,
}

impl Default for OpMix {
    fn default() -> Self {
        OpMix { add_row: 0.6, permute: 0.3, scale: 0.1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GenConfig {
    pub n: usize,
    pub m: usize,
    pub backend: Backend,
    /// The number of elementary factors `s` is uniform on `[s_min, s_max]`.
    pub s_min: u32,
    pub s_max: u32,
    pub op_mix: OpMix,
    /// Coefficients of row-addition polynomials and of scalings.
    pub coeffs: CoeffDistribution,
    pub addrow_poly_degree_max: u32,
    /// Largest total degree allowed in `F`.
    pub degree_cap: u32,
    pub forbid_zero_rows: bool,
    /// Run the ideal-equality oracle and the witness check on every record.
    pub verify: bool,
    pub gb_max_pairs: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            n: 2,
            m: 3,
            backend: Backend::ElementaryProduct,
            s_min: 1,
            s_max: 10,
            op_mix: OpMix::default(),
            coeffs: CoeffDistribution::default(),
            addrow_poly_degree_max: 1,
            degree_cap: 10,
            forbid_zero_rows: true,
            verify: true,
            gb_max_pairs: crate::groebner::DEFAULT_MAX_PAIRS,
        }
    }
}

impl GenConfig {
    pub fn validate(&self, field: FieldConfig) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.n == 0 {
            return bad("n must be at least 1".into());
        }
        if self.m < self.n {
            return bad(format!("m >= n required (m = {}, n = {})", self.m, self.n));
        }
        if self.s_min == 0 || self.s_min > self.s_max {
            return bad(format!("need 1 <= s_min <= s_max, got [{}, {}]", self.s_min, self.s_max));
        }
        let OpMix { add_row, permute, scale } = self.op_mix;
        if [add_row, permute, scale].iter().any(|w| !(0.0..=1.0).contains(w)) || ((add_row + permute + scale) - 1.0).abs() > 1e-9
        {
            return bad(format!("op_mix weights must be probabilities summing to 1, got {:?}", self.op_mix));
        }
        if self.m == 1 && scale == 0.0 && self.backend == Backend::ElementaryProduct {
            return bad("with m = 1 only scalings exist; op_mix.scale must be positive".into());
        }
        self.coeffs.validate(field)
    }

    fn pick_kind<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        // 0 = add_row, 1 = permute, 2 = scale; row ops need two rows
        let w = if self.m >= 2 {
            [self.op_mix.add_row, self.op_mix.permute, self.op_mix.scale]
        } else {
            [0.0, 0.0, 1.0]
        };
        let total: f64 = w.iter().sum();
        let mut u = rng.gen::<f64>() * total;
        for (k, wk) in w.iter().enumerate() {
            if u < *wk {
                return k;
            }
            u -= wk;
        }
        w.iter().rposition(|&x| x > 0.0).expect("some positive weight")
    }
}

/// A random polynomial of total degree `<= deg_max`, conditioned on being
/// nonzero.
pub fn random_polynomial<R: Rng + ?Sized>(ring: Ring, deg_max: u32, dist: &CoeffDistribution, rng: &mut R) -> Result<Polynomial> {
    let mons = monomials_up_to(ring.nvars, deg_max);
    for _ in 0..1000 {
        let f = Polynomial::from_terms(ring, mons.iter().map(|m| (m.clone(), dist.sample(ring.field, rng))));
        if !f.is_zero() {
            return Ok(f);
        }
    }
    Err(Error::ResampleExhausted { retries: 1000, reason: "coefficient distribution yields only zero".into() })
}

/// A random polynomial of total degree `<= deg_max`, possibly zero.
fn random_entry<R: Rng + ?Sized>(ring: Ring, deg_max: u32, dist: &CoeffDistribution, rng: &mut R) -> Polynomial {
    Polynomial::from_terms(ring, monomials_up_to(ring.nvars, deg_max).into_iter().map(|m| (m, dist.sample(ring.field, rng))))
}

fn sample_op<R: Rng + ?Sized>(ring: Ring, cfg: &GenConfig, rng: &mut R) -> Result<ElementaryOp> {
    let m = cfg.m;
    let distinct_pair = |rng: &mut R| {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        (i, j)
    };
    match cfg.pick_kind(rng) {
        0 => {
            let (target, source) = distinct_pair(rng);
            let f = random_polynomial(ring, cfg.addrow_poly_degree_max, &cfg.coeffs, rng)?;
            ElementaryOp::add_row(m, target, source, f)
        }
        1 => {
            let (i, j) = distinct_pair(rng);
            ElementaryOp::permute(m, i, j)
        }
        _ => {
            let i = rng.gen_range(0..m);
            let c = cfg.coeffs.sample_nonzero(ring.field, rng)?;
            ElementaryOp::scale(m, i, c)
        }
    }
}

fn check_input(g: &[Polynomial], cfg: &GenConfig) -> Result<Ring> {
    let ring = g.first().ok_or_else(|| Error::InvalidArgument("empty G".into()))?.ring();
    if g.len() != cfg.n {
        return Err(Error::InvalidArgument(format!("G has {} polynomials, config expects n = {}", g.len(), cfg.n)));
    }
    for (i, gi) in g.iter().enumerate() {
        ring.check_same(&gi.ring())?;
        if gi.is_zero() {
            return Err(Error::InvalidArgument(format!("g_{} is zero", i + 1)));
        }
    }
    cfg.validate(ring.field)?;
    let deg = g.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    if deg > cfg.degree_cap {
        return Err(Error::InvalidArgument(format!("deg G = {deg} exceeds degree_cap {}", cfg.degree_cap)));
    }
    Ok(ring)
}

fn padded_column(ring: Ring, g: &[Polynomial], m: usize) -> PolyMatrix {
    let mut v = g.to_vec();
    v.resize(m, ring.zero());
    PolyMatrix::column(ring, v).expect("column in one ring")
}

/// Builds the record for an explicit elementary trace (product order:
/// `U = trace[0] * ... * trace[s-1]`). No resampling happens here.
pub fn record_from_ops(g: &[Polynomial], ops: Vec<ElementaryOp>, m: usize, seed: u64) -> Result<DatasetRecord> {
    let ring = g.first().ok_or_else(|| Error::InvalidArgument("empty G".into()))?.ring();
    let f = apply_product(&ops, &padded_column(ring, g, m))?.into_entries();
    Ok(DatasetRecord::new(0, seed, g.to_vec(), f, Trace::Elementary(ops)))
}

/// Random generators of `<G>` from a product of elementary matrices.
pub fn generate_record(g: &[Polynomial], cfg: &GenConfig, record_seed: u64) -> Result<DatasetRecord> {
    let mut rng = rng_from_seed(record_seed);
    generate_record_with(g, cfg, record_seed, &mut rng)
}

fn generate_record_with(g: &[Polynomial], cfg: &GenConfig, record_seed: u64, rng: &mut RecordRng) -> Result<DatasetRecord> {
    let ring = check_input(g, cfg)?;
    for _ in 0..RECORD_ATTEMPTS {
        let s = rng.gen_range(cfg.s_min..=cfg.s_max);
        let mut column = padded_column(ring, g, cfg.m);
        // applied[k] acts k-th, so the product order is the reverse
        let mut applied = Vec::with_capacity(s as usize);
        for _ in 0..s {
            let mut accepted = None;
            for _ in 0..=OP_RETRIES {
                let op = sample_op(ring, cfg, rng)?;
                let next = op.apply_left(&column)?;
                if next.max_degree().unwrap_or(0) <= cfg.degree_cap {
                    accepted = Some((op, next));
                    break;
                }
            }
            let (op, next) = accepted.ok_or_else(|| Error::ResampleExhausted {
                retries: OP_RETRIES,
                reason: format!("every candidate op pushed deg F above {}", cfg.degree_cap),
            })?;
            applied.push(op);
            column = next;
        }
        if cfg.forbid_zero_rows && column.entries().iter().any(Polynomial::is_zero) {
            continue;
        }
        applied.reverse();
        let record = DatasetRecord::new(0, record_seed, g.to_vec(), column.into_entries(), Trace::Elementary(applied));
        return finish(record, cfg);
    }
    Err(Error::ResampleExhausted { retries: RECORD_ATTEMPTS, reason: "every attempt left a zero row in F".into() })
}

fn random_unitriangular<R: Rng + ?Sized>(ring: Ring, size: usize, cfg: &GenConfig, rng: &mut R) -> PolyMatrix {
    let mut u = PolyMatrix::identity(ring, size);
    for i in 0..size {
        for j in i + 1..size {
            u.set(i, j, random_entry(ring, cfg.addrow_poly_degree_max, &cfg.coeffs, rng));
        }
    }
    u
}

/// Random generators of `<G>` from `A = U1 S [U2; O]`.
pub fn generate_record_bruhat(g: &[Polynomial], cfg: &GenConfig, record_seed: u64) -> Result<DatasetRecord> {
    let mut rng = rng_from_seed(record_seed);
    generate_record_bruhat_with(g, cfg, record_seed, &mut rng)
}

fn generate_record_bruhat_with(
    g: &[Polynomial],
    cfg: &GenConfig,
    record_seed: u64,
    rng: &mut RecordRng,
) -> Result<DatasetRecord> {
    let ring = check_input(g, cfg)?;
    let gcol = PolyMatrix::column(ring, g.to_vec())?;
    let mut last_reason = String::new();
    for _ in 0..RECORD_ATTEMPTS {
        let u1 = random_unitriangular(ring, cfg.m, cfg, rng);
        let mut perm: Vec<usize> = (0..cfg.m).collect();
        perm.shuffle(rng);
        let s = Permutation::new(perm)?;
        let u2 = random_unitriangular(ring, cfg.n, cfg, rng);
        let pair = bruhat_compose(&u1, &s, &u2)?;
        let f = pair.a.mul(&gcol)?;
        if f.max_degree().unwrap_or(0) > cfg.degree_cap {
            last_reason = format!("deg F above {}", cfg.degree_cap);
            continue;
        }
        if cfg.forbid_zero_rows && f.entries().iter().any(Polynomial::is_zero) {
            last_reason = "zero row in F".into();
            continue;
        }
        let record = DatasetRecord::new(0, record_seed, g.to_vec(), f.into_entries(), Trace::Bruhat { u1, s, u2 });
        return finish(record, cfg);
    }
    Err(Error::ResampleExhausted { retries: RECORD_ATTEMPTS, reason: last_reason })
}

fn finish(mut record: DatasetRecord, cfg: &GenConfig) -> Result<DatasetRecord> {
    if cfg.verify {
        let check = verify_record(&record, &BuchbergerConfig { max_pairs: cfg.gb_max_pairs })?;
        if let Some(reason) = check.failure() {
            return Err(Error::VerificationFailed(format!("freshly generated record: {reason}")));
        }
        record.stats.verified = true;
    }
    Ok(record)
}

/// Per-record results of the three independent checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecordCheck {
    /// `<F> = <G>` by the Groebner oracle.
    pub ideal_equal: bool,
    /// `F` equals `A G` with `A` rebuilt from the trace.
    pub reconstruction: bool,
    /// The left inverse `B` from the trace satisfies `B A = E_n`.
    pub witness: bool,
}

impl RecordCheck {
    pub fn passed(&self) -> bool {
        self.ideal_equal && self.reconstruction && self.witness
    }

    /// First failing check, by its report name.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.ideal_equal {
            Some("ideal_mismatch")
        } else if !self.reconstruction {
            Some("trace_mismatch")
        } else if !self.witness {
            Some("witness_invalid")
        } else {
            None
        }
    }
}

/// The transformation `A` (m x n) and its certified left inverse `B`.
pub fn transformation_and_witness(record: &DatasetRecord) -> Result<(PolyMatrix, PolyMatrix)> {
    let ring = record.ring();
    let (m, n) = (record.f.len(), record.g.len());
    match &record.trace {
        Trace::Elementary(ops) => {
            let a = apply_product(ops, &PolyMatrix::stacked_identity(ring, m, n)?)?;
            let b = left_inverse_from_trace(ops, ring, m, n)?;
            Ok((a, b))
        }
        Trace::Bruhat { u1, s, u2 } => {
            let pair = bruhat_compose(u1, s, u2)?;
            Ok((pair.a, pair.b))
        }
    }
}

pub fn verify_record(record: &DatasetRecord, gb: &BuchbergerConfig) -> Result<RecordCheck> {
    let ring = record.ring();
    let (a, b) = transformation_and_witness(record)?;
    let (m, n) = (record.f.len(), record.g.len());
    let reconstruction = (a.rows(), a.cols()) == (m, n)
        && a.mul(&PolyMatrix::column(ring, record.g.clone())?)?.entries() == record.f.as_slice();
    let witness = b.mul(&a)? == PolyMatrix::identity(ring, n);
    let ideal_equal = ideal_equal(&record.f, &record.g, &MonomialOrder::lex(ring.nvars), gb)?;
    Ok(RecordCheck { ideal_equal, reconstruction, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;
    use crate::shape::sample_shape_basis;

    fn ring() -> Ring {
        Ring::new(2, FieldConfig::Rationals)
    }

    fn ps(v: &[&str]) -> Vec<Polynomial> {
        v.iter().map(|s| parse(s, ring()).unwrap()).collect()
    }

    fn g() -> Vec<Polynomial> {
        ps(&["x1 - x2 + 1", "x2^2 - 3"])
    }

    #[test]
    fn empty_trace_pads_with_zeros() {
        let rec = record_from_ops(&g(), vec![], 4, 0).unwrap();
        let mut expected = g();
        expected.extend([ring().zero(), ring().zero()]);
        assert_eq!(rec.f, expected);
        assert!(verify_record(&rec, &Default::default()).unwrap().passed());
    }

    #[test]
    fn single_row_addition() {
        let f = parse("x1 + 2*x2", ring()).unwrap();
        let op = ElementaryOp::add_row(3, 2, 0, f.clone()).unwrap();
        let rec = record_from_ops(&g(), vec![op], 3, 0).unwrap();
        assert_eq!(rec.f, vec![g()[0].clone(), g()[1].clone(), &f * &g()[0]]);
    }

    #[test]
    fn bruhat_single_u2_entry() {
        let r = ring();
        let f = parse("x1*x2 - 1", r).unwrap();
        let mut u2 = PolyMatrix::identity(r, 2);
        u2.set(0, 1, f.clone());
        let rec = DatasetRecord::new(
            0,
            0,
            g(),
            {
                let pair = bruhat_compose(&PolyMatrix::identity(r, 3), &Permutation::identity(3), &u2).unwrap();
                pair.a.mul(&PolyMatrix::column(r, g()).unwrap()).unwrap().into_entries()
            },
            Trace::Bruhat { u1: PolyMatrix::identity(r, 3), s: Permutation::identity(3), u2 },
        );
        assert_eq!(rec.f, vec![&g()[0] + &(&f * &g()[1]), g()[1].clone(), r.zero()]);
        assert!(verify_record(&rec, &Default::default()).unwrap().passed());
    }

    #[test]
    fn random_records_verify() {
        let cfg = GenConfig { n: 2, m: 4, s_max: 6, ..Default::default() };
        for seed in 0..20 {
            let rec = generate_record(&g(), &cfg, seed).unwrap();
            assert!(rec.stats.verified);
            assert_eq!(rec.f.len(), 4);
            assert!(rec.f.iter().all(|f| !f.is_zero()));
            assert!(rec.stats.max_deg_f.unwrap() <= cfg.degree_cap);
        }
    }

    #[test]
    fn random_bruhat_records_verify() {
        let cfg = GenConfig { backend: Backend::Bruhat, ..Default::default() };
        for seed in 0..20 {
            let rec = generate_record_bruhat(&g(), &cfg, seed).unwrap();
            assert!(rec.stats.verified);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let cfg = GenConfig::default();
        assert_eq!(generate_record(&g(), &cfg, 11).unwrap(), generate_record(&g(), &cfg, 11).unwrap());
    }

    #[test]
    fn degree_cap_exhaustion_is_structured() {
        // every row addition multiplies a nonzero row by a quadratic
        let cfg = GenConfig {
            m: 2,
            degree_cap: 2,
            op_mix: OpMix { add_row: 1.0, permute: 0.0, scale: 0.0 },
            addrow_poly_degree_max: 2,
            coeffs: CoeffDistribution::int_box(1, 1, 0.0),
            verify: false,
            ..Default::default()
        };
        let err = generate_record(&g(), &cfg, 0).unwrap_err();
        assert!(matches!(err, Error::ResampleExhausted { .. }), "{err}");
    }

    #[test]
    fn config_validation() {
        let q = FieldConfig::Rationals;
        assert!(GenConfig { m: 1, n: 2, ..Default::default() }.validate(q).is_err());
        assert!(GenConfig { s_min: 0, ..Default::default() }.validate(q).is_err());
        let mix = OpMix { add_row: 0.5, permute: 0.3, scale: 0.1 };
        assert!(GenConfig { op_mix: mix, ..Default::default() }.validate(q).is_err());
        assert!(GenConfig::default().validate(q).is_ok());
    }

    #[test]
    fn wrong_n_rejected() {
        let cfg = GenConfig { n: 3, m: 3, ..Default::default() };
        assert!(generate_record(&g(), &cfg, 0).is_err());
    }

    #[test]
    fn prime_field_records() {
        let field = FieldConfig::prime(32003).unwrap();
        let shape = sample_shape_basis(field, 2, 3, &CoeffDistribution::default(), 4).unwrap();
        let cfg = GenConfig { n: 2, m: 4, ..Default::default() };
        let rec = generate_record(&shape.generators(), &cfg, 4).unwrap();
        assert!(rec.stats.verified);
    }
}
