//! Buchberger's algorithm, reduced Groebner bases and ideal comparison.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::division::{reduce, sub_scaled, SortedPoly};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{Polynomial, Ring};

pub const DEFAULT_MAX_PAIRS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerConfig {
    /// Hard cap on the number of S-pairs that are reduced.
    pub max_pairs: usize,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig { max_pairs: DEFAULT_MAX_PAIRS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub order: MonomialOrder,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> Ring {
        self.generators[0].ring()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.ring().check_same(&f.ring())?;
        let basis = sorted(&self.generators, &self.order);
        Ok(reduce(SortedPoly::from_poly(f, &self.order), &basis, &self.order).to_poly(f.ring()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.leading_monomial(&self.order).expect("nonzero generator")).collect()
    }

    /// Monomials outside the leading-term ideal, if there are finitely many
    /// (the ideal is zero-dimensional) and at most `limit` of them.
    pub fn standard_monomials(&self, limit: usize) -> Option<Vec<Monomial>> {
        let lms = self.leading_monomials();
        let r = self.ring().nvars;
        // a pure power of every variable must appear among the leading monomials
        let mut bounds = Vec::with_capacity(r);
        for v in 0..r {
            let b = lms
                .iter()
                .filter(|m| m.exponents().iter().enumerate().all(|(i, &e)| i == v || e == 0))
                .map(|m| m.exponents()[v])
                .min()?;
            bounds.push(b);
        }
        let mut out = Vec::new();
        let mut e = vec![0u32; r];
        loop {
            let m = Monomial::new(e.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
                if out.len() > limit {
                    return None;
                }
            }
            // odometer over the box [0, bounds)
            let mut k = 0;
            loop {
                if k == r {
                    return Some(out);
                }
                e[k] += 1;
                if e[k] < bounds[k] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }
}

fn sorted(gens: &[Polynomial], order: &MonomialOrder) -> Vec<SortedPoly> {
    gens.iter().map(|g| SortedPoly::from_poly(g, order)).collect()
}

fn check_inputs(fs: &[Polynomial], order: &MonomialOrder) -> Result<Ring> {
    let ring = fs.first().ok_or_else(|| Error::InvalidArgument("empty polynomial list".into()))?.ring();
    for f in fs {
        ring.check_same(&f.ring())?;
    }
    if order.nvars() != ring.nvars {
        return Err(Error::DimensionMismatch(format!("order on {} variables, ring has {}", order.nvars(), ring.nvars)));
    }
    Ok(ring)
}

/// `(lcm / LT(f)) f - (lcm / LT(g)) g`, with `lcm` the least common multiple
/// of the leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &MonomialOrder) -> Result<Polynomial> {
    let ring = check_inputs(&[f.clone(), g.clone()], order)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("S-polynomial of zero".into()));
    }
    let (sf, sg) = (SortedPoly::from_poly(f, order), SortedPoly::from_poly(g, order));
    Ok(SortedPoly { terms: spoly_sorted(&sf, &sg, order) }.to_poly(ring))
}

fn spoly_sorted(f: &SortedPoly, g: &SortedPoly, order: &MonomialOrder) -> Vec<(Monomial, crate::field::Coeff)> {
    let (fm, fc) = f.lead().expect("nonzero");
    let (gm, gc) = g.lead().expect("nonzero");
    let lcm = fm.lcm(gm);
    let uf = fm.quotient_of(&lcm).expect("divides lcm");
    let ug = gm.quotient_of(&lcm).expect("divides lcm");
    let f_tail = &f.terms[..f.terms.len() - 1];
    let g_tail = &g.terms[..g.terms.len() - 1];
    let cf = fc.inv().expect("nonzero");
    let cg = gc.inv().expect("nonzero");
    // leading terms cancel, so only the tails contribute
    let left = sub_scaled(&[], &(-&cf), &uf, f_tail, order);
    sub_scaled(&left, &cg, &ug, g_tail, order)
}

/// Completes `fs` to a Groebner basis (not yet inter-reduced). Zero inputs
/// are dropped; an all-zero input is an error.
pub fn buchberger(fs: &[Polynomial], order: &MonomialOrder, cfg: &BuchbergerConfig) -> Result<GroebnerBasis> {
    let ring = check_inputs(fs, order)?;
    let mut basis: Vec<SortedPoly> = fs
        .iter()
        .filter(|f| !f.is_zero())
        .map(|f| {
            let mut s = SortedPoly::from_poly(f, order);
            s.make_monic();
            s
        })
        .collect();
    if basis.is_empty() {
        return Err(Error::InvalidArgument("all input polynomials are zero".into()));
    }

    // pending[i][j] (i < j) marks pairs still in the queue
    let mut pending: Vec<Vec<bool>> = Vec::new();
    let mut queue: BinaryHeap<Reverse<(u32, usize, usize)>> = BinaryHeap::new();
    let push_pairs = |basis: &Vec<SortedPoly>,
                      pending: &mut Vec<Vec<bool>>,
                      queue: &mut BinaryHeap<Reverse<(u32, usize, usize)>>,
                      j: usize| {
        for row in pending.iter_mut() {
            row.push(false);
        }
        pending.push(vec![false; j + 1]);
        let mj = &basis[j].lead().unwrap().0;
        for i in 0..j {
            let mi = &basis[i].lead().unwrap().0;
            pending[i][j] = true;
            queue.push(Reverse((mi.lcm(mj).total_degree(), j, i)));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut pending, &mut queue, j);
    }

    let mut reduced_pairs = 0usize;
    while let Some(Reverse((_, j, i))) = queue.pop() {
        pending[i][j] = false;
        let mi = basis[i].lead().unwrap().0.clone();
        let mj = basis[j].lead().unwrap().0.clone();
        if mi.is_coprime(&mj) {
            continue;
        }
        let lcm = mi.lcm(&mj);
        let is_pending = |a: usize, b: usize| if a < b { pending[a][b] } else { pending[b][a] };
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && basis[k].lead().unwrap().0.divides(&lcm) && !is_pending(i, k) && !is_pending(j, k)
        });
        if chain {
            continue;
        }
        reduced_pairs += 1;
        if reduced_pairs > cfg.max_pairs {
            return Err(Error::BudgetExceeded(format!("more than {} S-pair reductions", cfg.max_pairs)));
        }
        let s = SortedPoly { terms: spoly_sorted(&basis[i], &basis[j], order) };
        let mut h = reduce(s, &basis, order);
        if !h.is_zero() {
            h.make_monic();
            basis.push(h);
            let j = basis.len() - 1;
            push_pairs(&basis, &mut pending, &mut queue, j);
        }
    }
    Ok(GroebnerBasis { generators: basis.iter().map(|b| b.to_poly(ring)).collect(), order: order.clone(), reduced: false })
}

/// Inter-reduces until no term of any element is divisible by another
/// element's leading monomial; zeros are dropped. The result is monic and
/// sorted by descending leading monomial.
fn autoreduce(gens: &[Polynomial], order: &MonomialOrder) -> Vec<SortedPoly> {
    let mut polys: Vec<SortedPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = SortedPoly::from_poly(g, order);
            s.make_monic();
            s
        })
        .collect();
    loop {
        let mut changed = false;
        for idx in 0..polys.len() {
            if polys[idx].is_zero() {
                continue;
            }
            let others: Vec<SortedPoly> = polys
                .iter()
                .enumerate()
                .filter(|(k, q)| *k != idx && !q.is_zero())
                .map(|(_, q)| q.clone())
                .collect();
            let mut r = reduce(polys[idx].clone(), &others, order);
            r.make_monic();
            if r != polys[idx] {
                polys[idx] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    polys.retain(|p| !p.is_zero());
    polys.sort_by(|a, b| order.cmp(&b.lead().unwrap().0, &a.lead().unwrap().0));
    polys
}

/// Turns a Groebner basis into the unique reduced basis of its ideal. An
/// input that fails Buchberger's criterion after inter-reduction is
/// completed first, so the output is always the reduced basis of the ideal
/// the input generates.
pub fn reduce_basis(gb: &GroebnerBasis) -> Result<GroebnerBasis> {
    let order = &gb.order;
    let ring = check_inputs(&gb.generators, order)?;
    let mut gens: Vec<Polynomial> = autoreduce(&gb.generators, order).iter().map(|p| p.to_poly(ring)).collect();
    if gens.is_empty() {
        return Err(Error::InvalidArgument("basis of the zero ideal".into()));
    }
    if !satisfies_buchberger_criterion(&gens, order)? {
        let completed = buchberger(&gens, order, &BuchbergerConfig::default())?;
        gens = autoreduce(&completed.generators, order).iter().map(|p| p.to_poly(ring)).collect();
    }
    Ok(GroebnerBasis { generators: gens, order: order.clone(), reduced: true })
}

pub fn reduced_groebner_basis(fs: &[Polynomial], order: &MonomialOrder, cfg: &BuchbergerConfig) -> Result<GroebnerBasis> {
    let gb = buchberger(fs, order, cfg)?;
    let ring = gb.ring();
    let generators = autoreduce(&gb.generators, order).iter().map(|p| p.to_poly(ring)).collect();
    Ok(GroebnerBasis { generators, order: order.clone(), reduced: true })
}

/// Post-hoc check: every S-polynomial of the generators reduces to zero.
pub fn satisfies_buchberger_criterion(gens: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    check_inputs(gens, order)?;
    let basis = sorted(gens, order);
    if basis.iter().any(SortedPoly::is_zero) {
        return Ok(false);
    }
    for j in 0..basis.len() {
        for i in 0..j {
            let s = SortedPoly { terms: spoly_sorted(&basis[i], &basis[j], order) };
            if !reduce(s, &basis, order).is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether a list is, as given, a reduced Groebner basis: Buchberger's
/// criterion holds, all elements are monic and no term of an element is
/// divisible by another element's leading monomial.
pub fn is_reduced_groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Result<bool> {
    if !satisfies_buchberger_criterion(gens, order)? {
        return Ok(false);
    }
    for (i, g) in gens.iter().enumerate() {
        let (_, lc) = g.leading_term(order)?;
        if !lc.is_one() {
            return Ok(false);
        }
        for (j, h) in gens.iter().enumerate() {
            if i == j {
                continue;
            }
            let lm = h.leading_monomial(order)?;
            if g.terms().any(|(m, _)| lm.divides(m)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of both ideal-comparison routes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealComparison {
    /// Reduced bases coincide.
    pub canonical: bool,
    /// Every generator of each side reduces to zero modulo the other's basis.
    pub inclusion: bool,
}

pub fn compare_ideals(
    fs: &[Polynomial],
    gs: &[Polynomial],
    order: &MonomialOrder,
    cfg: &BuchbergerConfig,
) -> Result<IdealComparison> {
    if fs.is_empty() || gs.is_empty() {
        return Err(Error::InvalidArgument("empty generator list".into()));
    }
    let ring = check_inputs(fs, order)?;
    ring.check_same(&check_inputs(gs, order)?)?;
    let f_zero = fs.iter().all(Polynomial::is_zero);
    let g_zero = gs.iter().all(Polynomial::is_zero);
    if f_zero || g_zero {
        let same = f_zero && g_zero;
        return Ok(IdealComparison { canonical: same, inclusion: same });
    }
    let gb_f = reduced_groebner_basis(fs, order, cfg)?;
    let gb_g = reduced_groebner_basis(gs, order, cfg)?;
    let canonical = gb_f.generators == gb_g.generators;
    let mut inclusion = true;
    for f in fs {
        if !gb_g.contains(f)? {
            inclusion = false;
            break;
        }
    }
    if inclusion {
        for g in gs {
            if !gb_f.contains(g)? {
                inclusion = false;
                break;
            }
        }
    }
    Ok(IdealComparison { canonical, inclusion })
}

/// `<F> = <G>`, decided by canonical reduced bases and cross-checked by
/// double inclusion. Disagreement between the two routes is reported as a
/// verification failure.
pub fn ideal_equal(fs: &[Polynomial], gs: &[Polynomial], order: &MonomialOrder, cfg: &BuchbergerConfig) -> Result<bool> {
    let c = compare_ideals(fs, gs, order, cfg)?;
    if c.canonical != c.inclusion {
        return Err(Error::VerificationFailed(format!(
            "ideal comparison routes disagree (canonical {}, inclusion {})",
            c.canonical, c.inclusion
        )));
    }
    Ok(c.canonical)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldConfig;
    use crate::parse::parse;

    fn ring() -> Ring {
        Ring::new(2, FieldConfig::Rationals)
    }

    fn ps(v: &[&str]) -> Vec<Polynomial> {
        v.iter().map(|s| parse(s, ring()).unwrap()).collect()
    }

    fn lex() -> MonomialOrder {
        MonomialOrder::lex(2)
    }

    #[test]
    fn s_poly_examples() {
        let f = ps(&["x1^2 - x2", "x1*x2 - 1"]);
        assert!(s_polynomial(&f[0], &f[0], &lex()).unwrap().is_zero());
        let m = ps(&["x1", "x2"]);
        assert!(s_polynomial(&m[0], &m[1], &lex()).unwrap().is_zero());
        // lcm = x1^2 x2: x2(x1^2 - x2) - x1(x1 x2 - 1)
        assert_eq!(s_polynomial(&f[0], &f[1], &lex()).unwrap(), ps(&["-x2^2 + x1"])[0]);
        assert!(s_polynomial(&f[0], &ring().zero(), &lex()).is_err());
    }

    #[test]
    fn single_monomial() {
        let gb = reduced_groebner_basis(&ps(&["x1"]), &lex(), &Default::default()).unwrap();
        assert_eq!(gb.generators, ps(&["x1"]));
    }

    /// By hand (lex, x1 > x2): x1 = x1*(x1*x2) = x1^2*x2 = x2^2 modulo the
    /// ideal, so x1 - x2^2 is in it, and x1*x2 - 1 then reduces to x2^3 - 1.
    /// Reduced basis: {x1 - x2^2, x2^3 - 1}.
    #[test]
    fn golden_two_variable_instance() {
        let gb = reduced_groebner_basis(&ps(&["x1^2 - x2", "x1*x2 - 1"]), &lex(), &Default::default()).unwrap();
        assert_eq!(gb.generators, ps(&["x1 - x2^2", "x2^3 - 1"]));
        assert!(gb.reduced);
        assert!(is_reduced_groebner_basis(&gb.generators, &lex()).unwrap());
    }

    #[test]
    fn all_zero_input_is_error() {
        let z = vec![ring().zero()];
        assert!(buchberger(&z, &lex(), &Default::default()).is_err());
        assert!(buchberger(&[], &lex(), &Default::default()).is_err());
    }

    #[test]
    fn inter_reduction() {
        let gb = GroebnerBasis { generators: ps(&["x1", "x1 + x2"]), order: lex(), reduced: false };
        let red = reduce_basis(&gb).unwrap();
        assert_eq!(red.generators, ps(&["x1", "x2"]));
        assert_eq!(reduce_basis(&red).unwrap(), red);
    }

    #[test]
    fn budget_is_enforced() {
        let cfg = BuchbergerConfig { max_pairs: 0 };
        let err = buchberger(&ps(&["x1^2 - x2", "x1*x2 - 1"]), &lex(), &cfg).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded(_)));
    }

    #[test]
    fn ideal_equality() {
        let g = ps(&["x1 - x2", "x2^2"]);
        assert!(ideal_equal(&g, &g, &lex(), &Default::default()).unwrap());
        assert!(!ideal_equal(&ps(&["x1"]), &ps(&["x1^2"]), &lex(), &Default::default()).unwrap());
        let f = ps(&["x1 - x2 + x2^2", "x2^2", "x1*x2^2 - x2^3"]);
        assert!(ideal_equal(&f, &g, &lex(), &Default::default()).unwrap());
        assert!(ideal_equal(&f, &g, &MonomialOrder::degrevlex(2), &Default::default()).unwrap());
        assert!(ideal_equal(&[], &g, &lex(), &Default::default()).is_err());
    }

    #[test]
    fn zero_ideals_compare() {
        let z = vec![ring().zero()];
        assert!(ideal_equal(&z, &z, &lex(), &Default::default()).unwrap());
        assert!(!ideal_equal(&z, &ps(&["x1"]), &lex(), &Default::default()).unwrap());
    }

    #[test]
    fn standard_monomials_of_shape_basis() {
        let gb = reduced_groebner_basis(&ps(&["x1 - x2^2 + 1", "x2^3 - x2"]), &lex(), &Default::default()).unwrap();
        let sm = gb.standard_monomials(100).unwrap();
        assert_eq!(sm.len(), 3);
        assert!(sm.iter().all(|m| m.exponents()[0] == 0));
        let gb = reduced_groebner_basis(&ps(&["x1*x2"]), &lex(), &Default::default()).unwrap();
        assert!(gb.standard_monomials(100).is_none());
    }
}
