//! Multivariate division with remainder, plus the order-sorted term vectors
//! the Groebner engine reduces with.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

/// Terms sorted ascending under a fixed order; the leading term is last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct SortedPoly {
    pub terms: Vec<(Monomial, Coeff)>,
}

impl SortedPoly {
    pub fn from_poly(f: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<_> = f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        if !order.is_standard_lex() {
            terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        }
        SortedPoly { terms }
    }

    pub fn to_poly(&self, ring: Ring) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.iter().cloned())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&(Monomial, Coeff)> {
        self.terms.last()
    }

    pub fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.inv().expect("nonzero leading coefficient");
                for t in &mut self.terms {
                    t.1 = &t.1 * &inv;
                }
            }
        }
    }
}

/// `p - c * m * g`, where both inputs are ascending under `order`.
pub(crate) fn sub_scaled(
    p: &[(Monomial, Coeff)],
    c: &Coeff,
    m: &Monomial,
    g: &[(Monomial, Coeff)],
    order: &MonomialOrder,
) -> Vec<(Monomial, Coeff)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
    let mut pi = p.iter().peekable();
    loop {
        match (pi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => out.push(pi.next().unwrap().clone()),
            (None, Some(_)) => {
                let (gm, gc) = gi.next().unwrap();
                out.push((gm, -&gc));
            }
            (Some((pm, _)), Some((gm, _))) => match order.cmp(pm, gm) {
                Ordering::Less => out.push(pi.next().unwrap().clone()),
                Ordering::Greater => {
                    let (gm, gc) = gi.next().unwrap();
                    out.push((gm, -&gc));
                }
                Ordering::Equal => {
                    let (pm, pc) = pi.next().unwrap();
                    let (_, gc) = gi.next().unwrap();
                    let s = pc - &gc;
                    if !s.is_zero() {
                        out.push((pm.clone(), s));
                    }
                }
            },
        }
    }
    out
}

/// Full reduction of `f` modulo `basis` (all nonzero); returns the remainder.
/// The first basis element whose leading monomial divides the current
/// leading monomial is used.
pub(crate) fn reduce(f: SortedPoly, basis: &[SortedPoly], order: &MonomialOrder) -> SortedPoly {
    let mut p = f.terms;
    let mut rem: Vec<(Monomial, Coeff)> = Vec::new();
    while let Some((lm, lc)) = p.pop() {
        let hit = basis.iter().find_map(|g| {
            let (gm, gc) = g.lead().expect("nonzero divisor");
            gm.quotient_of(&lm).map(|q| (g, q, gc))
        });
        match hit {
            Some((g, q, gc)) => {
                let t = &lc * &gc.inv().expect("nonzero");
                let tail = &g.terms[..g.terms.len() - 1];
                p = sub_scaled(&p, &t, &q, tail, order);
            }
            None => rem.push((lm, lc)),
        }
    }
    rem.reverse();
    SortedPoly { terms: rem }
}

/// Textbook multivariate division: `f = sum q_i d_i + r` where no term of
/// `r` is divisible by any `LT(d_i)`. Divisors are tried in list order.
pub fn divide(f: &Polynomial, divisors: &[Polynomial], order: &MonomialOrder) -> Result<(Vec<Polynomial>, Polynomial)> {
    let ring = f.ring();
    if divisors.is_empty() {
        return Err(Error::InvalidArgument("empty divisor list".into()));
    }
    if order.nvars() != ring.nvars {
        return Err(Error::DimensionMismatch(format!("order on {} variables, ring has {}", order.nvars(), ring.nvars)));
    }
    for (i, d) in divisors.iter().enumerate() {
        ring.check_same(&d.ring())?;
        if d.is_zero() {
            return Err(Error::ZeroPolynomial(format!("divisor {i} is zero")));
        }
    }
    let ds: Vec<SortedPoly> = divisors.iter().map(|d| SortedPoly::from_poly(d, order)).collect();
    let mut quotients = vec![Polynomial::zero(ring); divisors.len()];
    let mut p = SortedPoly::from_poly(f, order).terms;
    let mut rem = Vec::new();
    while let Some((lm, lc)) = p.pop() {
        let hit = ds.iter().enumerate().find_map(|(i, d)| {
            let (dm, dc) = d.lead().unwrap();
            dm.quotient_of(&lm).map(|q| (i, q, dc))
        });
        match hit {
            Some((i, q, dc)) => {
                let t = &lc * &dc.inv()?;
                quotients[i].add_term(q.clone(), t.clone());
                let tail = &ds[i].terms[..ds[i].terms.len() - 1];
                p = sub_scaled(&p, &t, &q, tail, order);
            }
            None => rem.push((lm, lc)),
        }
    }
    Ok((quotients, Polynomial::from_terms(ring, rem)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::parse::parse;

    fn p(s: &str) -> Polynomial {
        parse(s, Ring::new(2, FieldConfig::Rationals)).unwrap()
    }

    fn reconstruct(qs: &[Polynomial], ds: &[Polynomial], r: &Polynomial) -> Polynomial {
        qs.iter().zip(ds).fold(r.clone(), |acc, (q, d)| &acc + &(q * d))
    }

    #[test]
    fn self_division() {
        let g = p("x1^2 - x2");
        let (q, r) = divide(&g, std::slice::from_ref(&g), &MonomialOrder::lex(2)).unwrap();
        assert_eq!(q, vec![p("1")]);
        assert!(r.is_zero());
    }

    #[test]
    fn no_divisibility() {
        let (q, r) = divide(&p("x1"), &[p("x2")], &MonomialOrder::lex(2)).unwrap();
        assert!(q[0].is_zero());
        assert_eq!(r, p("x1"));
    }

    /// Hand run of the textbook algorithm (lex, x1 > x2):
    ///   x1^2x2 -> q1 += x1,  p = x1x2^2 + x2^2 + x1
    ///   x1x2^2 -> q1 += x2,  p = x2^2 + x1 + x2
    ///   x1     -> r  += x1,  p = x2^2 + x2
    ///   x2^2   -> q2 += 1,   p = x2 + 1
    ///   x2, 1  -> r
    #[test]
    fn textbook_example() {
        let f = p("x1^2*x2 + x1*x2^2 + x2^2");
        let ds = [p("x1*x2 - 1"), p("x2^2 - 1")];
        let (q, r) = divide(&f, &ds, &MonomialOrder::lex(2)).unwrap();
        assert_eq!(r, p("x1 + x2 + 1"));
        assert_eq!(q, vec![p("x1 + x2"), p("1")]);
        assert_eq!(reconstruct(&q, &ds, &r), f);
    }

    #[test]
    fn zero_divisor_rejected() {
        let z = Ring::new(2, FieldConfig::Rationals).zero();
        assert!(matches!(divide(&p("x1"), &[p("x2"), z], &MonomialOrder::lex(2)), Err(Error::ZeroPolynomial(_))));
        assert!(divide(&p("x1"), &[], &MonomialOrder::lex(2)).is_err());
    }

    #[test]
    fn degrevlex_division_reconstructs() {
        let o = MonomialOrder::degrevlex(2);
        let f = p("x1^3*x2 - 2*x2^4 + x1*x2 + 5");
        let ds = [p("x1*x2 - x2^2"), p("x2^3 + x1")];
        let (q, r) = divide(&f, &ds, &o).unwrap();
        assert_eq!(reconstruct(&q, &ds, &r), f);
        for (m, _) in r.terms() {
            for d in &ds {
                assert!(!d.leading_monomial(&o).unwrap().divides(m));
            }
        }
    }
}
