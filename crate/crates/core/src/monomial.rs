//! Monomials (exponent vectors) and monomial orderings.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `x^alpha = x1^a1 * ... * xr^ar`. The derived `Ord` is lexicographic on the
/// exponent vector, i.e. Lex with `x1 > x2 > ... > xr`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    DegRevLex,
}

/// A monomial order together with a variable priority. `priority[0]` is the
/// index of the largest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    /// Lex with `x1 > x2 > ... > xr`.
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, priority: (0..nvars).collect() }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, priority: (0..nvars).collect() }
    }

    pub fn with_priority(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &i in &priority {
            if i >= priority.len() || seen[i] {
                return Err(Error::InvalidArgument(format!("{priority:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    /// Lex with the identity priority coincides with the derived `Ord` on
    /// [`Monomial`], which several fast paths rely on.
    pub fn is_standard_lex(&self) -> bool {
        self.kind == OrderKind::Lex && self.priority.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn try_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != self.nvars() || b.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "monomials with {} and {} variables under an order on {}",
                a.nvars(),
                b.nvars(),
                self.nvars()
            )));
        }
        Ok(self.cmp(a, b))
    }

    /// Compares two monomials of the order's variable count.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::DegRevLex => {
                match a.total_degree().cmp(&b.total_degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                // smaller exponent in the smallest variable wins
                for &i in self.priority.iter().rev() {
                    match ea[i].cmp(&eb[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Number of monomials of total degree at most `d` in `r` variables,
/// `sum_{k<=d} C(r-1+k, k) = C(r+d, d)`.
pub fn count_monomials_up_to(r: usize, d: u32) -> u128 {
    let mut acc: u128 = 1;
    // C(r+d, d) computed incrementally
    for k in 1..=d as u128 {
        acc = acc * (r as u128 + k) / k;
    }
    acc
}

/// All exponent vectors of `r` variables with total degree `<= d`, in Lex
/// order (ascending).
pub fn monomials_up_to(r: usize, d: u32) -> Vec<Monomial> {
    fn rec(r: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == r {
            out.push(Monomial(prefix.clone()));
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(r, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, d, &mut Vec::with_capacity(r), &mut out);
    out
}
