use idealforge::density::{irreducible_oracle, section_iota, OracleBudget, OracleVerdict};
use idealforge::division::divide;
use idealforge::forge::tokens::{decode_polynomial, decode_record, polynomial_tokens, record_tokens};
use idealforge::groebner::{compare_ideals, reduced_groebner_basis, BuchbergerConfig};
use idealforge::parse::{parse, render};
use idealforge::polymat::{apply_product, left_inverse_from_trace, ElementaryOp, PolyMatrix};
use idealforge::{FieldConfig, Monomial, MonomialOrder, Polynomial, Ring};
use proptest::prelude::*;

const FIELDS: [FieldConfig; 3] =
    [FieldConfig::Rationals, FieldConfig::PrimeField { p: 7 }, FieldConfig::PrimeField { p: 32003 }];

fn field() -> impl Strategy<Value = FieldConfig> {
    (0..FIELDS.len()).prop_map(|i| FIELDS[i])
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -9i64..=9), 0..=max_terms)
}

fn build(ring: Ring, t: &Terms) -> Polynomial {
    let field = ring.field;
    Polynomial::from_terms(ring, t.iter().map(|(e, c)| (Monomial::new(e.clone()), field.from_i64(*c))))
}

fn orders(n: usize) -> [MonomialOrder; 2] {
    [MonomialOrder::lex(n), MonomialOrder::degrevlex(n)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(f in field(), a in terms(3, 3, 5), b in terms(3, 3, 5), c in terms(3, 3, 5)) {
        let ring = Ring::new(3, f);
        let (a, b, c) = (build(ring, &a), build(ring, &b), build(ring, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a - &b, &a + &(-&b));
        prop_assert_eq!(&a * &ring.one(), a.clone());
        prop_assert!((&a * &ring.zero()).is_zero());
    }

    #[test]
    fn parse_render_round_trip(f in field(), a in terms(3, 4, 6)) {
        let ring = Ring::new(3, f);
        let a = build(ring, &a);
        for order in orders(3) {
            prop_assert_eq!(parse(&render(&a, &order), ring).unwrap(), a.clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn division_reconstructs(f in field(), p in terms(2, 4, 6), ds in prop::collection::vec(terms(2, 2, 3), 1..=3)) {
        let ring = Ring::new(2, f);
        let p = build(ring, &p);
        let ds: Vec<Polynomial> = ds.iter().map(|t| build(ring, t)).filter(|d| !d.is_zero()).collect();
        prop_assume!(!ds.is_empty());
        for order in orders(2) {
            let (qs, r) = divide(&p, &ds, &order).unwrap();
            let mut sum = r.clone();
            for (q, d) in qs.iter().zip(&ds) {
                sum = &sum + &(q * d);
            }
            prop_assert_eq!(&sum, &p);
            let lts: Vec<Monomial> = ds.iter().map(|d| d.leading_monomial(&order).unwrap()).collect();
            for (m, _) in r.terms() {
                prop_assert!(lts.iter().all(|l| !l.divides(m)));
            }
        }
    }

    #[test]
    fn leading_term_is_multiplicative(f in field(), a in terms(3, 3, 5), b in terms(3, 3, 5)) {
        let ring = Ring::new(3, f);
        let (a, b) = (build(ring, &a), build(ring, &b));
        prop_assume!(!a.is_zero() && !b.is_zero());
        for order in orders(3) {
            let (ma, ca) = a.leading_term(&order).unwrap();
            let (mb, cb) = b.leading_term(&order).unwrap();
            let (m, c) = (&a * &b).leading_term(&order).unwrap();
            prop_assert_eq!(m, ma.mul(&mb));
            prop_assert_eq!(c, &ca * &cb);
        }
    }

    #[test]
    fn token_round_trip(f in field(), fs in prop::collection::vec(terms(2, 3, 4), 1..=3), gs in prop::collection::vec(terms(2, 3, 4), 1..=2)) {
        let ring = Ring::new(2, f);
        let fs: Vec<Polynomial> = fs.iter().map(|t| build(ring, t)).collect();
        let gs: Vec<Polynomial> = gs.iter().map(|t| build(ring, t)).collect();
        prop_assert_eq!(decode_polynomial(&polynomial_tokens(&fs[0]), ring).unwrap(), fs[0].clone());
        let (df, dg) = decode_record(&record_tokens(&fs, &gs), ring).unwrap();
        prop_assert_eq!(df, fs);
        prop_assert_eq!(dg, gs);
    }

    #[test]
    fn bareiss_matches_cofactor(f in field(), n in 1usize..=3, entries in prop::collection::vec(terms(2, 2, 3), 9)) {
        let ring = Ring::new(2, f);
        let m = PolyMatrix::new(ring, n, n, entries[..n * n].iter().map(|t| build(ring, t)).collect()).unwrap();
        prop_assert_eq!(m.det().unwrap(), m.det_cofactor().unwrap());
    }

    #[test]
    fn det_is_multiplicative(f in field(), x in prop::collection::vec(terms(2, 1, 2), 4), y in prop::collection::vec(terms(2, 1, 2), 4)) {
        let ring = Ring::new(2, f);
        let mk = |v: &Vec<Terms>| PolyMatrix::new(ring, 2, 2, v.iter().map(|t| build(ring, t)).collect()).unwrap();
        let (x, y) = (mk(&x), mk(&y));
        prop_assert_eq!(x.mul(&y).unwrap().det().unwrap(), &x.det().unwrap() * &y.det().unwrap());
    }
}

#[derive(Debug, Clone)]
enum Op {
    Permute(usize, usize),
    Scale(usize, i64),
    AddRow(usize, usize, Terms),
}

fn op(m: usize) -> impl Strategy<Value = Op> {
    prop_oneof![
        (0..m, 0..m).prop_filter("distinct", |(i, j)| i != j).prop_map(|(i, j)| Op::Permute(i, j)),
        (0..m, 1i64..=6).prop_map(|(i, c)| Op::Scale(i, c)),
        (0..m, 0..m, terms(2, 1, 3)).prop_filter("distinct", |(i, j, _)| i != j).prop_map(|(i, j, t)| Op::AddRow(i, j, t)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn trace_left_inverse(f in field(), m in 2usize..=4, raw in prop::collection::vec(op(4), 1..=8)) {
        let ring = Ring::new(2, f);
        let n = 2;
        let ops: Vec<ElementaryOp> = raw
            .iter()
            .filter_map(|o| match o {
                Op::Permute(i, j) if *i < m && *j < m => ElementaryOp::permute(m, *i, *j).ok(),
                Op::Scale(i, c) if *i < m => ElementaryOp::scale(m, *i, f.from_i64(*c)).ok(),
                Op::AddRow(i, j, t) if *i < m && *j < m => ElementaryOp::add_row(m, *i, *j, build(ring, t)).ok(),
                _ => None,
            })
            .collect();
        let a = apply_product(&ops, &PolyMatrix::stacked_identity(ring, m, n).unwrap()).unwrap();
        let b = left_inverse_from_trace(&ops, ring, m, n).unwrap();
        prop_assert_eq!(b.mul(&a).unwrap(), PolyMatrix::identity(ring, n));
    }

    #[test]
    fn section_round_trip(f in field(), entries in prop::collection::vec(terms(3, 2, 3), 4)) {
        let ring = Ring::new(3, f);
        let c = PolyMatrix::new(ring, 2, 2, entries.iter().map(|t| build(ring, t)).collect()).unwrap();
        let w = section_iota(&c, 4).unwrap();
        prop_assert_eq!(w.p(), c);
        prop_assert_eq!(w.b().mul(w.a()).unwrap(), PolyMatrix::identity(ring, 2));
    }

    #[test]
    fn oracle_factors_divide(f in field(), a in terms(1, 3, 3), b in terms(1, 3, 3)) {
        let ring = Ring::new(1, f);
        let (a, b) = (build(ring, &a), build(ring, &b));
        prop_assume!(a.degree().unwrap_or(0) >= 1 && b.degree().unwrap_or(0) >= 1);
        let p = &a * &b;
        match irreducible_oracle(&p, &OracleBudget::default()).unwrap() {
            OracleVerdict::Irreducible(c) => prop_assert!(false, "{p} = ({a})({b}) certified {c:?}"),
            OracleVerdict::Reducible(g) => {
                prop_assert!(g.degree().unwrap() >= 1 && g.degree() < p.degree());
                prop_assert!(p.exact_div(&g).unwrap().is_some());
            }
            OracleVerdict::Unknown(_) => {}
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn groebner_basis_is_permutation_invariant(f in field(), gens in prop::collection::vec(terms(2, 2, 3), 2..=3), rot in 0usize..3) {
        let ring = Ring::new(2, f);
        let gens: Vec<Polynomial> = gens.iter().map(|t| build(ring, t)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let mut perm = gens.clone();
        perm.rotate_left(rot % gens.len());
        perm.reverse();
        let cfg = BuchbergerConfig::default();
        for order in orders(2) {
            let a = reduced_groebner_basis(&gens, &order, &cfg).unwrap();
            let b = reduced_groebner_basis(&perm, &order, &cfg).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn ideal_comparison_routes_agree(f in field(), gens in prop::collection::vec(terms(2, 2, 3), 1..=3), mult in terms(2, 1, 2), other in terms(2, 2, 3)) {
        let ring = Ring::new(2, f);
        let gens: Vec<Polynomial> = gens.iter().map(|t| build(ring, t)).filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let cfg = BuchbergerConfig::default();
        let order = MonomialOrder::lex(2);
        // same ideal: append a combination of the generators
        let mut same = gens.clone();
        same.push(&gens[0] * &build(ring, &mult));
        let last = same.len() - 1;
        same.swap(0, last);
        let same: Vec<Polynomial> = same.into_iter().filter(|g| !g.is_zero()).collect();
        let cmp = compare_ideals(&gens, &same, &order, &cfg).unwrap();
        prop_assert!(cmp.canonical && cmp.inclusion);
        // possibly different ideal
        let mut alt = gens.clone();
        alt[0] = &alt[0] + &build(ring, &other);
        let alt: Vec<Polynomial> = alt.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!alt.is_empty());
        let cmp = compare_ideals(&gens, &alt, &order, &cfg).unwrap();
        prop_assert_eq!(cmp.canonical, cmp.inclusion);
    }
}
