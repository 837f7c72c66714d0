//! Shape-position Groebner bases
//! `(x1 - h1(xn), ..., x_{n-1} - h_{n-1}(xn), gn(xn))` in `K[x1..xn]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};
use crate::sampling::{rng_from_seed, CoeffDistribution};

/// A shape basis with `n` polynomials in `n` variables; `gn` is monic of
/// degree `d >= 1` and every `h_i` has degree below `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeBasis {
    ring: Ring,
    d: u32,
    h: Vec<Polynomial>,
    g_n: Polynomial,
}

fn is_univariate_in(f: &Polynomial, var: usize) -> bool {
    f.terms().all(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| i == var || e == 0))
}

impl ShapeBasis {
    pub fn from_parts(ring: Ring, h: Vec<Polynomial>, g_n: Polynomial) -> Result<Self> {
        let n = ring.nvars;
        if n == 0 || h.len() + 1 != n {
            return Err(Error::InvalidArgument(format!("{} tails for {n} variables", h.len())));
        }
        let last = n - 1;
        ring.check_same(&g_n.ring())?;
        let d = match g_n.degree() {
            Some(d) if d >= 1 && is_univariate_in(&g_n, last) => d,
            _ => return Err(Error::InvalidArgument(format!("g_n = {g_n} is not a non-constant polynomial in x{n}"))),
        };
        if !g_n.coeff(&Monomial::new({
            let mut e = vec![0; n];
            e[last] = d;
            e
        }))
        .is_one()
        {
            return Err(Error::InvalidArgument(format!("g_n = {g_n} is not monic")));
        }
        for (i, hi) in h.iter().enumerate() {
            ring.check_same(&hi.ring())?;
            if !is_univariate_in(hi, last) || hi.degree().is_some_and(|k| k >= d) {
                return Err(Error::InvalidArgument(format!("h_{} = {hi} must be in x{n} of degree < {d}", i + 1)));
            }
        }
        Ok(ShapeBasis { ring, d, h, g_n })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.ring.nvars
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn tails(&self) -> &[Polynomial] {
        &self.h
    }

    pub fn g_n(&self) -> &Polynomial {
        &self.g_n
    }

    /// `(g_1, ..., g_n)` with `g_i = x_i - h_i(x_n)`.
    pub fn generators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> =
            self.h.iter().enumerate().map(|(i, hi)| &Polynomial::var(self.ring, i) - hi).collect();
        out.push(self.g_n.clone());
        out
    }

    /// Free coefficients: `d` per tail plus the `d` non-leading ones of `g_n`.
    pub fn parameter_count(&self) -> usize {
        self.n() * self.d as usize
    }
}

/// Shape-basis sampling parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeConfig {
    /// `d` is uniform on `[1, d_max]`.
    pub d_max: u32,
    pub coeffs: CoeffDistribution,
}

impl Default for ShapeConfig {
    fn default() -> Self {
        ShapeConfig { d_max: 5, coeffs: CoeffDistribution::default() }
    }
}

impl ShapeConfig {
    pub fn validate(&self, field: FieldConfig) -> Result<()> {
        if self.d_max == 0 {
            return Err(Error::InvalidArgument("d_max must be at least 1".into()));
        }
        self.coeffs.validate(field)
    }
}

pub fn sample_shape_basis_with<R: Rng + ?Sized>(
    field: FieldConfig,
    n: usize,
    d: u32,
    dist: &CoeffDistribution,
    rng: &mut R,
) -> Result<ShapeBasis> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and d >= 1, got n = {n}, d = {d}")));
    }
    dist.validate(field)?;
    let ring = Ring::new(n, field);
    let last = n - 1;
    let power = |k: u32| {
        let mut e = vec![0; n];
        e[last] = k;
        Monomial::new(e)
    };
    let mut univariate = |top: u32| Polynomial::from_terms(ring, (0..top).map(|k| (power(k), dist.sample(field, rng))));
    let h: Vec<Polynomial> = (0..last).map(|_| univariate(d)).collect();
    let g_n = &univariate(d) + &Polynomial::monomial(ring, power(d), field.one());
    ShapeBasis::from_parts(ring, h, g_n)
}

/// Deterministic for a fixed seed.
pub fn sample_shape_basis(
    field: FieldConfig,
    n: usize,
    d: u32,
    dist: &CoeffDistribution,
    seed: u64,
) -> Result<ShapeBasis> {
    sample_shape_basis_with(field, n, d, dist, &mut rng_from_seed(seed))
}

/// Draws `d` uniformly from `[1, d_max]` and then a basis.
pub fn sample_with_config<R: Rng + ?Sized>(field: FieldConfig, n: usize, cfg: &ShapeConfig, rng: &mut R) -> Result<ShapeBasis> {
    cfg.validate(field)?;
    let d = rng.gen_range(1..=cfg.d_max);
    sample_shape_basis_with(field, n, d, &cfg.coeffs, rng)
}

/// Structural test for the shape form: `n` polynomials in `n` variables,
/// `g_i = x_i - h_i(x_n)` for `i < n`, `g_n` monic in `x_n` of degree
/// `d >= 1`, and `deg h_i < d`.
pub fn is_shape_position(gs: &[Polynomial]) -> bool {
    let Some(first) = gs.first() else { return false };
    let ring = first.ring();
    let n = gs.len();
    if ring.nvars != n || gs.iter().any(|g| g.ring() != ring) {
        return false;
    }
    let tails: Vec<Polynomial> = gs[..n - 1]
        .iter()
        .enumerate()
        .map(|(i, g)| &Polynomial::var(ring, i) - g)
        .collect();
    ShapeBasis::from_parts(ring, tails, gs[n - 1].clone()).is_ok()
}

/// Shape bases are reduced Lex bases; this is the Lex order they use.
pub fn shape_order(n: usize) -> MonomialOrder {
    MonomialOrder::lex(n)
}
