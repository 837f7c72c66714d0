//! Sparse multivariate polynomials over a [`FieldConfig`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Coeff, FieldConfig};
use crate::monomial::{Monomial, MonomialOrder};

/// The ring `K[x1, ..., xr]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    pub nvars: usize,
    pub field: FieldConfig,
}

impl Ring {
    pub fn new(nvars: usize, field: FieldConfig) -> Self {
        Ring { nvars, field }
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self != other {
            return Err(Error::RingMismatch(format!(
                "K={} r={} vs K={} r={}",
                self.field, self.nvars, other.field, other.nvars
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(*self)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::constant(*self, self.field.one())
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(*self, i)
    }

    pub fn int(&self, c: i64) -> Polynomial {
        Polynomial::constant(*self, self.field.from_i64(c))
    }
}

/// A polynomial: a map from monomials to nonzero coefficients. Stored keyed
/// by the Lex order on exponent vectors; other orders are applied on demand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: Coeff) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars), c)
    }

    pub fn var(ring: Ring, i: usize) -> Self {
        assert!(i < ring.nvars, "variable index {i} out of range");
        Self::monomial(ring, Monomial::var(ring.nvars, i), ring.field.one())
    }

    pub fn monomial(ring: Ring, m: Monomial, c: Coeff) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring, terms }
    }

    /// Sums the given terms, merging repeated monomials and dropping zeros.
    pub fn from_terms(ring: Ring, it: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Polynomial::zero(ring);
        for (m, c) in it {
            assert_eq!(m.nvars(), ring.nvars, "monomial arity differs from the ring");
            assert!(ring.field.contains(&c), "coefficient {c} not in {}", ring.field);
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn field(&self) -> FieldConfig {
        self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Coeff> {
        if self.is_zero() {
            return Some(self.ring.field.zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending Lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ring.field.zero())
    }

    /// Total degree; `None` stands for deg 0 = -infinity.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exponents()[var]).max()
    }

    /// Indices of the variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars).filter(|&i| self.terms.keys().any(|m| m.exponents()[i] > 0)).collect()
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(Coeff::bit_size).max().unwrap_or(0)
    }

    /// Adds `c * m` in place.
    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let (mut big, small) = if self.nterms() >= other.nterms() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        Ok(big)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.ring.check_same(&other.ring)?;
        let mut out = Polynomial::zero(self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Coeff) -> Polynomial {
        assert!(self.ring.field.contains(c), "scalar {c} not in {}", self.ring.field);
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { ring: self.ring, terms }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.ring);
        }
        let terms = self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect();
        Polynomial { ring: self.ring, terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<(Monomial, Coeff)> {
        if order.nvars() != self.ring.nvars {
            return Err(Error::DimensionMismatch(format!(
                "order on {} variables, polynomial in {}",
                order.nvars(),
                self.ring.nvars
            )));
        }
        let lt = if order.is_standard_lex() {
            self.terms.iter().next_back()
        } else {
            self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
        };
        lt.map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::ZeroPolynomial("leading term of 0".into()))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Result<Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Scales so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Ok((_, c)) if !c.is_one() => self.scalar_mul(&c.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    /// Substitutes `x_var = value`.
    pub fn specialize(&self, var: usize, value: &Coeff) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let mut e = m.exponents().to_vec();
            let k = std::mem::replace(&mut e[var], 0);
            let mut f = c.clone();
            for _ in 0..k {
                f = &f * value;
            }
            out.add_term(Monomial::new(e), f);
        }
        out
    }

    /// Formal partial derivative with respect to `x_var`.
    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.ring);
        for (m, c) in &self.terms {
            let k = m.exponents()[var];
            if k == 0 {
                continue;
            }
            let mut e = m.exponents().to_vec();
            e[var] -= 1;
            out.add_term(Monomial::new(e), c * &self.ring.field.from_i64(k as i64));
        }
        out
    }

    /// The same polynomial viewed in another ring with the same field and
    /// at least as many variables (extra variables are appended).
    pub fn embed(&self, ring: Ring) -> Result<Polynomial> {
        if ring.field != self.ring.field || ring.nvars < self.ring.nvars {
            return Err(Error::RingMismatch(format!("cannot embed into r={} over {}", ring.nvars, ring.field)));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.resize(ring.nvars, 0);
                (Monomial::new(e), c.clone())
            })
            .collect();
        Ok(Polynomial { ring, terms })
    }

    /// Exact quotient `self / g` when `g` divides `self`, else `None`.
    pub fn exact_div(&self, g: &Polynomial) -> Result<Option<Polynomial>> {
        let order = MonomialOrder::lex(self.ring.nvars);
        let (mut q, r) = crate::division::divide(self, std::slice::from_ref(g), &order)?;
        Ok(if r.is_zero() { Some(q.pop().expect("one quotient")) } else { None })
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.try_add(o).expect("ring mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.try_sub(o).expect("ring mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.try_mul(o).expect("ring mismatch in *")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring, terms }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::render(self, &MonomialOrder::lex(self.ring.nvars)))
    }
}
