use std::cmp::Ordering;

use num_rational::Ratio;
use proptest::prelude::*;

use super::*;
use crate::algebra::AlgebraElement;
use crate::catalog::build_enriched_str;
use crate::novikov::{rat, EnrichedMonomial, Scalar};
use crate::parse::parse_element;

fn gre(terms: &[(i64, i64)]) -> GroupRingElement {
    GroupRingElement::from_terms(1, terms.iter().map(|&(g, c)| (vec![g], c)))
}

#[test]
fn cpn_group_order() {
    let g = OrderedGroup::cpn(2);
    assert_eq!(g.compare(&[1], &[0]).unwrap(), Ordering::Greater);
    assert_eq!(g.weight(&[1]), vec![Ratio::new(1, 3)]);
    let q = [-3];
    assert_eq!(g.weight(&q), vec![Ratio::from_integer(-1)]);
    assert_eq!(g.compare(&q, &[0]).unwrap(), Ordering::Less);
    assert_eq!(g.compare(&[2], &[2]).unwrap(), Ordering::Equal);
    assert!(matches!(g.compare(&[1, 0], &[0]), Err(Error::GroupMismatch(_))));
}

#[test]
fn group_ring_products() {
    let g = OrderedGroup::lex(vec!["x".into()]);
    let p = gr_multiply(&gre(&[(0, 1), (1, 1)]), &gre(&[(0, 1), (1, -1)]), &g).unwrap();
    assert_eq!(p, gre(&[(0, 1), (2, -1)]));
    assert_eq!(p.render(&g), "1 - x^2");
    assert_eq!(gr_multiply(&gre(&[(3, 1)]), &gre(&[(-5, 1)]), &g).unwrap(), gre(&[(-2, 1)]));
    let wrong = GroupRingElement::one(2);
    assert!(matches!(gr_multiply(&wrong, &p, &g), Err(Error::GroupMismatch(_))));
}

#[test]
fn rank_one_search_finds_signed_monomials() {
    let g = OrderedGroup::cpn(1);
    let rep = classify_gr_units(&g, GroupSearchBounds { support: 3, coeff: 2, exponent: 4 });
    assert!(rep.only_signed_monomials);
    assert_eq!(rep.units.len(), 2 * 9);
    assert!(rep.units.iter().any(|u| u.unit.is_one()));
    for u in &rep.units {
        assert!(gr_multiply(&u.unit, &u.inverse, &g).unwrap().is_one());
    }
}

#[test]
fn one_plus_x_has_no_bounded_inverse() {
    let p = gre(&[(0, 1), (1, 1)]);
    for e in 1..8 {
        let b = GroupSearchBounds { support: 8, coeff: 3, exponent: e };
        assert!(bounded_inverse(&p, &b).is_none());
    }
    let g = OrderedGroup::cpn(2);
    let (lo, hi) = p.extremes(&g).unwrap();
    assert_ne!(lo, hi);
}

#[test]
fn embedding_cpn2() {
    let r = build_enriched_str("cpn:2").unwrap();
    let e = embed_product_qenr(&r).unwrap();
    let x = parse_element(&r, "x").unwrap();
    assert_eq!(e.embed(&x).unwrap(), GroupRingElement::monomial(vec![1], 1));
    assert_eq!(e.group.weight(&[1]), vec![Ratio::new(1, 3)]);
    let x3 = x.power(3);
    assert_eq!(e.embed(&x3).unwrap(), GroupRingElement::monomial(e.class_element(0), 1));
    let q = e.q_element(0);
    let x3q = gr_multiply(&e.embed(&x3).unwrap(), &GroupRingElement::monomial(q, 1), &e.group).unwrap();
    assert!(x3q.is_one());
    assert!(e.embed(&AlgebraElement::one(&r)).unwrap().is_one());
}

#[test]
fn embedding_cp1_cp1() {
    let r = build_enriched_str("prod:cpn:1,cpn:1").unwrap();
    let e = embed_product_qenr(&r).unwrap();
    let a = parse_element(&r, "x_1").unwrap();
    let b = parse_element(&r, "x_2").unwrap();
    let ab = e.embed(&(&a * &b)).unwrap();
    assert_eq!(ab, GroupRingElement::monomial(vec![1, 1], 1));
    assert_eq!(
        ab,
        gr_multiply(&e.embed(&a).unwrap(), &e.embed(&b).unwrap(), &e.group).unwrap()
    );
}

#[test]
fn embedding_rejects_g24_and_fractions() {
    let r = build_enriched_str("g24").unwrap();
    assert!(matches!(embed_product_qenr(&r), Err(Error::NotAProductOfProjectiveSpaces(_))));
    let r = build_enriched_str("cpn:1").unwrap();
    let e = embed_product_qenr(&r).unwrap();
    let half = AlgebraElement::scalar(&r, Scalar::constant(crate::novikov::ratio(1, 2)));
    assert!(matches!(e.embed(&half), Err(Error::NotIntegral(_))));
}

#[test]
fn embedded_units_pull_back_to_signed_monomials() {
    let r = build_enriched_str("prod:cpn:1,cpn:1").unwrap();
    let e = embed_product_qenr(&r).unwrap();
    let rep = classify_gr_units(&e.group, GroupSearchBounds { support: 2, coeff: 1, exponent: 3 });
    assert!(rep.only_signed_monomials);
    for u in &rep.units {
        let a = e.pullback(&u.unit).unwrap();
        assert_eq!(a.support().len(), 1);
        let (_, m, c) = a.terms().next().unwrap();
        assert!(c == &rat(1) || c == &rat(-1));
        let _: &EnrichedMonomial = m;
        assert_eq!(e.embed(&a).unwrap(), u.unit);
        let b = e.pullback(&u.inverse).unwrap();
        assert!((&a * &b).is_one());
    }
}

fn product_group() -> OrderedGroup {
    OrderedGroup::new(
        vec!["a".into(), "b".into()],
        vec![vec![Ratio::new(1, 2), Ratio::new(0, 1)], vec![Ratio::new(0, 1), Ratio::new(1, 3)]],
    )
    .unwrap()
}

fn elem2() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-6i64..=6, 2)
}

fn gr2() -> impl Strategy<Value = GroupRingElement> {
    proptest::collection::vec((elem2(), -3i64..=3), 1..4).prop_map(|ts| GroupRingElement::from_terms(2, ts))
}

proptest! {
    #[test]
    fn order_is_total_and_translation_invariant(g in elem2(), h in elem2(), k in elem2()) {
        let grp = product_group();
        let o = grp.compare(&g, &h).unwrap();
        prop_assert_eq!(o == Ordering::Equal, g == h);
        prop_assert_eq!(grp.compare(&h, &g).unwrap(), o.reverse());
        let gk: Vec<i64> = g.iter().zip(&k).map(|(a, b)| a + b).collect();
        let hk: Vec<i64> = h.iter().zip(&k).map(|(a, b)| a + b).collect();
        prop_assert_eq!(grp.compare(&gk, &hk).unwrap(), o);
    }

    #[test]
    fn order_is_transitive(g in elem2(), h in elem2(), k in elem2()) {
        let grp = product_group();
        if grp.compare(&g, &h).unwrap() == Ordering::Less && grp.compare(&h, &k).unwrap() == Ordering::Less {
            prop_assert_eq!(grp.compare(&g, &k).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn extremal_terms_survive(p in gr2(), r in gr2()) {
        let grp = product_group();
        if p.is_zero() || r.is_zero() {
            return Ok(());
        }
        let pr = gr_multiply(&p, &r, &grp).unwrap();
        let (pmin, pmax) = p.extremes(&grp).unwrap();
        let (rmin, rmax) = r.extremes(&grp).unwrap();
        let lo: Vec<i64> = pmin.iter().zip(rmin).map(|(a, b)| a + b).collect();
        let hi: Vec<i64> = pmax.iter().zip(rmax).map(|(a, b)| a + b).collect();
        let (prmin, prmax) = pr.extremes(&grp).unwrap();
        prop_assert_eq!(prmin, &lo);
        prop_assert_eq!(prmax, &hi);
    }

    #[test]
    fn embedding_is_multiplicative(i in 0usize..6, j in 0usize..6, c in -2i64..=2, d in -2i64..=2, s in prop::bool::ANY) {
        let r = build_enriched_str("prod:cpn:1,cpn:2").unwrap();
        let e = embed_product_qenr(&r).unwrap();
        let m1 = EnrichedMonomial::new(vec![c, d]);
        let m2 = EnrichedMonomial::new(vec![d, -c]);
        let a = AlgebraElement::basis_scaled(&r, i, Scalar::monomial(m1, rat(if s { -1 } else { 1 })));
        let b = AlgebraElement::basis_scaled(&r, j, Scalar::monomial(m2, rat(1)));
        let lhs = e.embed(&(&a * &b)).unwrap();
        let rhs = gr_multiply(&e.embed(&a).unwrap(), &e.embed(&b).unwrap(), &e.group).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(e.pullback(&lhs).unwrap(), &a * &b);
    }
}
