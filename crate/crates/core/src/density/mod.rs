//! Desk-scale experiments around left-regular transformations: syzygy
//! checks, the irreducible-determinant membership criterion, the explicit
//! section `C -> (B, A)` with `B1 A1 = C`, and determinant irreducibility
//! frequencies.

pub mod irreducible;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use irreducible::{irreducible_oracle, Certificate, OracleBudget, OracleVerdict};

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::forge::random_polynomial;
use crate::monomial::monomials_up_to;
use crate::poly::{Polynomial, Ring};
use crate::polymat::{BlockSplit, PolyMatrix};
use crate::sampling::{derive_seed, rng_from_seed, CoeffDistribution};

/// `true` iff `W G = 0`, i.e. every row of `W` is a syzygy of `G`.
pub fn syzygy_check(w: &PolyMatrix, g: &[Polynomial]) -> Result<bool> {
    if w.cols() != g.len() {
        return Err(Error::DimensionMismatch(format!("W has {} columns, G has {} entries", w.cols(), g.len())));
    }
    if g.is_empty() {
        return Ok(true);
    }
    Ok(w.mul(&PolyMatrix::column(w.ring(), g.to_vec())?)?.is_zero())
}

fn max_entry_degree(m: &PolyMatrix) -> u32 {
    m.max_degree().unwrap_or(0)
}

/// `(B, A)` with `B` n x m, `A` m x n, `(BA - E_n) G = 0`, and `B`, `A`,
/// `B1 A1` of degree `<= degree_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPoint {
    b: PolyMatrix,
    a: PolyMatrix,
    degree_bound: u32,
}

impl WitnessPoint {
    pub fn new(b: PolyMatrix, a: PolyMatrix, degree_bound: u32, g: &[Polynomial]) -> Result<Self> {
        let (n, m) = (b.rows(), b.cols());
        if (a.rows(), a.cols()) != (m, n) || g.len() != n || m < n {
            return Err(Error::DimensionMismatch(format!(
                "B {}x{}, A {}x{}, G of length {}",
                n,
                m,
                a.rows(),
                a.cols(),
                g.len()
            )));
        }
        let residual = b.mul(&a)?.sub(&PolyMatrix::identity(b.ring(), n))?;
        if !syzygy_check(&residual, g)? {
            return Err(Error::Precondition("(BA - E) G != 0".into()));
        }
        let wp = WitnessPoint { b, a, degree_bound };
        let deg = [max_entry_degree(&wp.b), max_entry_degree(&wp.a), max_entry_degree(&wp.p())].into_iter().max();
        if deg.is_some_and(|d| d > degree_bound) {
            return Err(Error::InvalidArgument(format!("entries of degree {deg:?} exceed the bound {degree_bound}")));
        }
        Ok(wp)
    }

    pub fn b(&self) -> &PolyMatrix {
        &self.b
    }

    pub fn a(&self) -> &PolyMatrix {
        &self.a
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    /// `p(B, A) = B1 A1`.
    pub fn p(&self) -> PolyMatrix {
        let s = BlockSplit::of(&self.b, &self.a).expect("validated shapes");
        s.b1.mul(&s.a1).expect("square blocks")
    }

    /// `phi(B, A) = A G`.
    pub fn phi(&self, g: &[Polynomial]) -> Result<Vec<Polynomial>> {
        Ok(self.a.mul(&PolyMatrix::column(self.a.ring(), g.to_vec())?)?.into_entries())
    }
}

/// `iota(C) = (B, A)` with `B = (E_n | E_n | O)` and
/// `A = [C; E_n - C; O]`, so that `BA = E_n` and `B1 A1 = C`.
pub fn section_iota(c: &PolyMatrix, m: usize) -> Result<WitnessPoint> {
    let ring = c.ring();
    let n = c.rows();
    if c.cols() != n {
        return Err(Error::DimensionMismatch(format!("C is {}x{}", n, c.cols())));
    }
    if m < 2 * n {
        return Err(Error::InvalidArgument(format!("m >= 2n required (m = {m}, n = {n})")));
    }
    let e = PolyMatrix::identity(ring, n);
    let b = e.hstack(&e)?.hstack(&PolyMatrix::zeros(ring, n, m - 2 * n))?;
    let a = c.vstack(&e.sub(c)?)?.vstack(&PolyMatrix::zeros(ring, m - 2 * n, n))?;
    if b.mul(&a)? != e {
        return Err(Error::VerificationFailed("BA != E for the section".into()));
    }
    let d = max_entry_degree(c);
    let wp = WitnessPoint { b, a, degree_bound: d };
    if wp.p() != *c {
        return Err(Error::VerificationFailed("p(iota(C)) != C".into()));
    }
    Ok(wp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipVerdict {
    InF0ViaB1,
    InF0ViaA1,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    pub verdict: MembershipVerdict,
    /// `n < 3`: the verdict's linear algebra still holds but the structural
    /// guarantee behind the criterion does not apply.
    pub hypothesis_violated: bool,
    /// `det(B1 A1)`.
    pub det: Polynomial,
    /// `W = BA - E_n`, rows in `Syz(G)`.
    pub w: PolyMatrix,
    pub oracle: Option<OracleVerdict>,
    /// `A' = [B1^{-1} (E - B2 A2); A2]` with `B A' = E` and `A' G = A G`.
    pub a_prime: Option<PolyMatrix>,
    /// `B' = (A1^{-1} | O)` with `B' A = E`.
    pub b_prime: Option<PolyMatrix>,
}

pub fn membership_by_irreducible_det(
    b: &PolyMatrix,
    a: &PolyMatrix,
    g: &[Polynomial],
    budget: &OracleBudget,
) -> Result<MembershipReport> {
    let (n, m) = (b.rows(), b.cols());
    if (a.rows(), a.cols()) != (m, n) || g.len() != n || m < n || n == 0 {
        return Err(Error::DimensionMismatch(format!("B {}x{}, A {}x{}, G of length {}", n, m, a.rows(), a.cols(), g.len())));
    }
    let ring = b.ring();
    let e = PolyMatrix::identity(ring, n);
    let w = b.mul(a)?.sub(&e)?;
    if !syzygy_check(&w, g)? {
        return Err(Error::Precondition("(BA - E) G != 0".into()));
    }
    let s = BlockSplit::of(b, a)?;
    let b2a2 = s.b2.mul(&s.a2)?;
    let det = e.add(&w)?.sub(&b2a2)?.det()?;
    let (det_b1, det_a1) = (s.b1.det()?, s.a1.det()?);
    if det != s.b1.mul(&s.a1)?.det()? || det != &det_b1 * &det_a1 {
        return Err(Error::VerificationFailed("det(E + W - B2 A2) != det(B1) det(A1)".into()));
    }
    let mut report = MembershipReport {
        verdict: MembershipVerdict::Inconclusive,
        hypothesis_violated: n < 3,
        det: det.clone(),
        w,
        oracle: None,
        a_prime: None,
        b_prime: None,
    };
    let use_b1 = if det.is_zero() {
        return Ok(report);
    } else if det.is_constant() {
        true
    } else {
        let verdict = irreducible_oracle(&det, budget)?;
        let certified = verdict.is_irreducible();
        report.oracle = Some(verdict);
        if !certified {
            return Ok(report);
        }
        // an irreducible product of two determinants has a unit factor
        match (det_b1.is_constant(), det_a1.is_constant()) {
            (true, _) => true,
            (false, true) => false,
            (false, false) => return Err(Error::VerificationFailed("irreducible det with two non-unit factors".into())),
        }
    };
    if use_b1 {
        let b1_inv = s.b1.inverse_unimodular()?;
        let top = b1_inv.mul(&e.sub(&b2a2)?)?;
        let a_prime = top.vstack(&s.a2)?;
        if b.mul(&a_prime)? != e {
            return Err(Error::VerificationFailed("B A' != E".into()));
        }
        let gcol = PolyMatrix::column(ring, g.to_vec())?;
        if a_prime.mul(&gcol)? != a.mul(&gcol)? {
            return Err(Error::VerificationFailed("A' G != A G".into()));
        }
        report.verdict = MembershipVerdict::InF0ViaB1;
        report.a_prime = Some(a_prime);
    } else {
        let a1_inv = s.a1.inverse_unimodular()?;
        let b_prime = a1_inv.hstack(&PolyMatrix::zeros(ring, n, m - n))?;
        if b_prime.mul(a)? != e {
            return Err(Error::VerificationFailed("B' A != E".into()));
        }
        report.verdict = MembershipVerdict::InF0ViaA1;
        report.b_prime = Some(b_prime);
    }
    Ok(report)
}

/// A random `rows x cols` matrix over `ring` with entries of degree `<= d`.
pub fn random_matrix(ring: Ring, rows: usize, cols: usize, d: u32, dist: &CoeffDistribution, rng: &mut impl rand::Rng) -> PolyMatrix {
    let mons = monomials_up_to(ring.nvars, d);
    let entries = (0..rows * cols)
        .map(|_| Polynomial::from_terms(ring, mons.iter().map(|m| (m.clone(), dist.sample(ring.field, rng)))))
        .collect();
    PolyMatrix::new(ring, rows, cols, entries).expect("sized entries")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DetExperimentConfig {
    pub n: usize,
    /// Entry degree bound `D`.
    pub d: u32,
    /// Number of variables `r`.
    pub r: usize,
    pub trials: u64,
    pub coeffs: CoeffDistribution,
    pub seed: u64,
    pub field: FieldConfig,
    pub budget: OracleBudget,
}

impl Default for DetExperimentConfig {
    fn default() -> Self {
        DetExperimentConfig {
            n: 2,
            d: 1,
            r: 1,
            trials: 10_000,
            coeffs: CoeffDistribution::int_box(-3, 3, 0.0),
            seed: 0,
            field: FieldConfig::Rationals,
            budget: OracleBudget::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct DetExperimentReport {
    pub trials: u64,
    pub irreducible: u64,
    pub reducible: u64,
    pub unknown: u64,
    /// Constant (including zero) determinants.
    pub not_applicable: u64,
    /// `irreducible / trials`.
    pub irreducible_fraction: f64,
    pub unknown_fraction: f64,
}

#[derive(Clone, Copy)]
enum Outcome {
    Irreducible,
    Reducible,
    Unknown,
    NotApplicable,
}

fn det_trial(cfg: &DetExperimentConfig, ring: Ring, t: u64) -> Result<Outcome> {
    let mut rng = rng_from_seed(derive_seed(cfg.seed, t));
    let c = random_matrix(ring, cfg.n, cfg.n, cfg.d, &cfg.coeffs, &mut rng);
    let det = c.det()?;
    if det.is_constant() {
        return Ok(Outcome::NotApplicable);
    }
    Ok(match irreducible_oracle(&det, &cfg.budget)? {
        OracleVerdict::Irreducible(_) => Outcome::Irreducible,
        OracleVerdict::Reducible(_) => Outcome::Reducible,
        OracleVerdict::Unknown(_) => Outcome::Unknown,
    })
}

/// Frequencies of oracle verdicts on `det C` for random `C` in
/// `K[x1..xr]^{n x n}` with entries of degree `<= D`. Trial `t` draws from
/// `derive_seed(seed, t)`, so counts do not depend on scheduling.
pub fn det_irreducibility_experiment(cfg: &DetExperimentConfig) -> Result<DetExperimentReport> {
    cfg.field.validate()?;
    cfg.coeffs.validate(cfg.field)?;
    if cfg.n == 0 || cfg.trials == 0 {
        return Err(Error::InvalidArgument("n and trials must be positive".into()));
    }
    let ring = Ring::new(cfg.r, cfg.field);
    let outcomes: Vec<Outcome> =
        (0..cfg.trials).into_par_iter().map(|t| det_trial(cfg, ring, t)).collect::<Result<_>>()?;
    let mut rep = DetExperimentReport { trials: cfg.trials, ..Default::default() };
    for o in outcomes {
        match o {
            Outcome::Irreducible => rep.irreducible += 1,
            Outcome::Reducible => rep.reducible += 1,
            Outcome::Unknown => rep.unknown += 1,
            Outcome::NotApplicable => rep.not_applicable += 1,
        }
    }
    rep.irreducible_fraction = rep.irreducible as f64 / rep.trials as f64;
    rep.unknown_fraction = rep.unknown as f64 / rep.trials as f64;
    Ok(rep)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SectionExperimentConfig {
    pub n: usize,
    pub m: usize,
    pub d: u32,
    /// Variables of the ambient ring; defaults to `n`.
    pub r: Option<usize>,
    pub trials: u64,
    pub coeffs: CoeffDistribution,
    pub seed: u64,
    pub field: FieldConfig,
}

impl Default for SectionExperimentConfig {
    fn default() -> Self {
        SectionExperimentConfig {
            n: 2,
            m: 4,
            d: 2,
            r: None,
            trials: 1000,
            coeffs: CoeffDistribution::default(),
            seed: 0,
            field: FieldConfig::Rationals,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionExperimentReport {
    pub trials: u64,
    pub passed: u64,
    /// Indices of failing trials (at most 20).
    pub failures: Vec<u64>,
}

/// Round trips `p(iota(C)) = C` with `BA = E_n` for random `C`.
pub fn section_roundtrip_experiment(cfg: &SectionExperimentConfig) -> Result<SectionExperimentReport> {
    cfg.field.validate()?;
    cfg.coeffs.validate(cfg.field)?;
    if cfg.m < 2 * cfg.n {
        return Err(Error::InvalidArgument(format!("m >= 2n required (m = {}, n = {})", cfg.m, cfg.n)));
    }
    let ring = Ring::new(cfg.r.unwrap_or(cfg.n), cfg.field);
    let ok: Vec<bool> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = rng_from_seed(derive_seed(cfg.seed, t));
            let c = random_matrix(ring, cfg.n, cfg.n, cfg.d, &cfg.coeffs, &mut rng);
            match section_iota(&c, cfg.m) {
                Ok(wp) => wp.p() == c && wp.b().mul(wp.a()).is_ok_and(|ba| ba == PolyMatrix::identity(ring, cfg.n)),
                Err(_) => false,
            }
        })
        .collect();
    let failures: Vec<u64> = ok.iter().enumerate().filter(|(_, &k)| !k).map(|(i, _)| i as u64).collect();
    Ok(SectionExperimentReport {
        trials: cfg.trials,
        passed: cfg.trials - failures.len() as u64,
        failures: failures.into_iter().take(20).collect(),
    })
}

/// A random `n x n` matrix with constant nonzero determinant: an upper
/// times a lower unitriangular matrix with entries of degree `<= d`, times
/// a diagonal of nonzero constants.
pub fn random_unimodular(ring: Ring, n: usize, d: u32, dist: &CoeffDistribution, rng: &mut impl rand::Rng) -> Result<PolyMatrix> {
    let mut upper = PolyMatrix::identity(ring, n);
    let mut lower = PolyMatrix::identity(ring, n);
    let mut diag = PolyMatrix::identity(ring, n);
    for i in 0..n {
        for j in i + 1..n {
            upper.set(i, j, random_matrix(ring, 1, 1, d, dist, rng).into_entries().remove(0));
            lower.set(j, i, random_matrix(ring, 1, 1, d, dist, rng).into_entries().remove(0));
        }
        diag.set(i, i, Polynomial::constant(ring, dist.sample_nonzero(ring.field, rng)?));
    }
    upper.mul(&lower)?.mul(&diag)
}

/// Rows that are random combinations of the Koszul syzygies
/// `g_j e_i - g_i e_j` with multipliers of degree `<= d`.
pub fn random_koszul_rows(g: &[Polynomial], rows: usize, d: u32, dist: &CoeffDistribution, rng: &mut impl rand::Rng) -> Result<PolyMatrix> {
    let ring = g.first().ok_or_else(|| Error::InvalidArgument("empty G".into()))?.ring();
    let n = g.len();
    let mut w = PolyMatrix::zeros(ring, rows, n);
    for r in 0..rows {
        for i in 0..n {
            for j in i + 1..n {
                let h = random_polynomial(ring, d, dist, rng)?;
                w.set(r, i, w.get(r, i) + &(&h * &g[j]));
                w.set(r, j, w.get(r, j) - &(&h * &g[i]));
            }
        }
    }
    Ok(w)
}
