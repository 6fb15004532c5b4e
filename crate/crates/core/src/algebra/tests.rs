use num_rational::Ratio;
use proptest::prelude::*;

use super::*;
use crate::catalog::{build_novikov, STANDARD_IDS};
use crate::error::Error;
use crate::novikov::{rat, Convention, NovikovMonomial, Scalar};
use crate::parse::{normal_form, parse_element, parse_element_with};

fn g24() -> Ring<NovikovMonomial> {
    build_novikov("g24").unwrap()
}

fn el(r: &Ring<NovikovMonomial>, s: &str) -> AlgebraElement<NovikovMonomial> {
    parse_element(r, s).unwrap()
}

fn tpow(r: &Ring<NovikovMonomial>, e: i64) -> AlgebraElement<NovikovMonomial> {
    AlgebraElement::scalar(r, Scalar::monomial(NovikovMonomial::t_only(Ratio::from_integer(e)), rat(1)))
}

#[test]
fn normal_forms_from_relations() {
    let r = g24();
    assert_eq!(normal_form(&r, "x1^3").unwrap(), el(&r, "2*x1*x2"));
    assert_eq!(normal_form(&r, "x1^2*x2").unwrap(), &el(&r, "x2^2") + &tpow(&r, 4));
    let x14 = normal_form(&r, "x1^4").unwrap();
    assert_eq!(x14, el(&r, "2*x2^2 + 2*t^4"));
    assert_eq!(x14.to_string(), "2*x2^2 + 2 * t^4");
    assert!(matches!(normal_form(&r, "x3"), Err(Error::UnknownGenerator { .. })));
}

#[test]
fn g24_products() {
    let r = g24();
    assert_eq!((&el(&r, "x1") * &el(&r, "x1")).to_string(), "x1^2");
    assert_eq!((&el(&r, "x2^2") * &el(&r, "x2^2")).to_string(), "1 * t^8");
    assert_eq!(&el(&r, "x2") * &el(&r, "x1^2 - x2"), tpow(&r, 4));
    assert_eq!((&el(&r, "x1*x2") * &el(&r, "x1")).to_string(), "x2^2 + 1 * t^4");
}

#[test]
fn g24_powers() {
    let r = g24();
    let v = el(&r, "x1^2 - x2");
    assert_eq!(v.power(2), el(&r, "x2^2"));
    assert_eq!(v.power(4), tpow(&r, 8));
    let one = AlgebraElement::one(&r);
    for k in [0, 1, 5] {
        assert!(one.power(k).is_one());
    }
    assert!(v.power(0).is_one());
    assert_eq!(el(&r, "x2").power(2).power(2), tpow(&r, 8));
}

#[test]
fn unit_tests_and_witnesses() {
    let r = g24();
    assert!(is_unit(&el(&r, "x2")).unwrap().is_unit());
    for s in ["x1", "x1*x2"] {
        let a = el(&r, s);
        let t = is_unit(&a).unwrap();
        let w = t.witness().expect("zero divisor");
        assert_eq!(w.to_string(), "x1^2 - 2*x2", "{}", s);
        assert!((&a * w).is_zero());
    }
    assert!(matches!(is_unit(&AlgebraElement::zero(&r)), Err(Error::ZeroElement)));
}

#[test]
fn inverses() {
    let r = g24();
    assert!(inverse(&AlgebraElement::one(&r)).unwrap().is_one());
    assert_eq!(inverse(&el(&r, "x2")).unwrap(), el(&r, "(x1^2 - x2)*t^-4"));
    assert_eq!(inverse(&el(&r, "x2^2")).unwrap(), el(&r, "x2^2*t^-8"));
    match inverse(&el(&r, "x1")) {
        Err(Error::NotAUnit { witness }) => assert_eq!(witness, "x1^2 - 2*x2"),
        other => panic!("{:?}", other),
    }
    let a = el(&r, "1 + x2^2");
    let b = inverse(&a);
    assert!(b.is_ok() || matches!(b, Err(Error::NonFiniteInverse)));
    let c = el(&r, "x1^2 - x2");
    assert!(is_unit(&c).unwrap().is_unit());
    assert_eq!(&c * &inverse(&c).unwrap(), AlgebraElement::one(&r));
}

#[test]
fn non_finite_inverse_is_reported() {
    let r = build_novikov("cpn:1").unwrap();
    let a = el(&r, "1 + x");
    assert!(is_unit(&a).unwrap().is_unit());
    assert!(matches!(inverse(&a), Err(Error::NonFiniteInverse)));
}

#[test]
fn orders() {
    let r = g24();
    let o = element_order(&AlgebraElement::one(&r), DEFAULT_ORDER_CAP).unwrap();
    assert_eq!((o.order, o.scalar.unwrap().is_one()), (Some(1), true));
    for s in ["x2", "x1^2 - x2"] {
        let o = element_order(&el(&r, s), DEFAULT_ORDER_CAP).unwrap();
        assert!(o.finite);
        assert_eq!(o.order, Some(4));
        assert_eq!(o.scalar.unwrap().to_string(), "t^8");
    }
    assert!(matches!(element_order(&el(&r, "x1"), 8), Err(Error::NotAUnit { .. })));
    let o = element_order(&el(&r, "x2"), 3).unwrap();
    assert!(!o.finite && o.order.is_none());
}

#[test]
fn psi_examples() {
    let u = build_novikov("g24@universal").unwrap();
    let l = g24();
    let x = parse_element_with(&u, "x1*q*t^5", Convention::PhiFaithful).unwrap();
    let y = psi(&x, &l).unwrap();
    assert_eq!(y.render(Convention::PhiFaithful), "x1 * t^5");
    let lifted = psi_inv(&el(&l, "x2"), &u).unwrap();
    assert_eq!(lifted.render(Convention::PhiFaithful), "x2 * q^2");
    for i in 0..l.rank() {
        let v = AlgebraElement::basis(&l, i);
        assert_eq!(psi(&psi_inv(&v, &u).unwrap(), &l).unwrap(), v);
    }
    let bad = parse_element(&u, "x1").unwrap();
    assert!(matches!(psi(&bad, &l), Err(Error::NotHomogeneous { expected: 8, .. })));
}

#[test]
fn valuations() {
    let r = g24();
    assert_eq!(AlgebraElement::one(&r).valuation().unwrap(), Ratio::from_integer(0));
    assert_eq!(el(&r, "x2^2*t^4 + 1").valuation().unwrap(), Ratio::from_integer(4));
    assert_eq!(el(&r, "t^-2").valuation().unwrap(), Ratio::from_integer(-2));
    assert!(matches!(AlgebraElement::zero(&r).valuation(), Err(Error::ZeroElement)));
}

#[test]
fn ring_mismatch() {
    let a = AlgebraElement::one(&g24());
    let b = AlgebraElement::one(&build_novikov("cpn:2").unwrap());
    assert!(matches!(a.multiply(&b), Err(Error::RingMismatch { .. })));
}

fn det(m: &[Vec<Scalar<NovikovMonomial>>]) -> Scalar<NovikovMonomial> {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = Scalar::zero();
    for (j, c) in m[0].iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let minor: Vec<Vec<_>> = m[1..].iter().map(|row| [&row[..j], &row[j + 1..]].concat()).collect();
        let term = c * &det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[test]
fn determinant_agrees_with_unit_test() {
    let r = g24();
    for s in ["x1", "x2", "x1*x2", "x1^2", "x2^2", "x1^2 - x2", "x1 + x2", "1 + x2^2", "x1^2 - 2*x2 + x2^2"] {
        let a = el(&r, s);
        let d = det(&multiplication_matrix(&a));
        let unit = is_unit(&a).unwrap();
        assert_eq!(unit.is_unit(), !d.is_zero(), "{}", s);
        if let Some(w) = unit.witness() {
            assert!((&a * w).is_zero());
            assert!(!w.is_zero());
        }
    }
}

#[test]
fn catalog_rings_pass_structure_suite() {
    for id in STANDARD_IDS {
        let r = build_novikov(id).unwrap();
        let rep = r.check_structure();
        assert!(rep.ok(), "{}: {:?}", id, rep.failures);
        let one = AlgebraElement::one(&r);
        for i in 0..r.rank() {
            let b = AlgebraElement::basis(&r, i);
            assert_eq!(&one * &b, b);
        }
    }
}

fn small_element(r: &Ring<NovikovMonomial>) -> impl Strategy<Value = AlgebraElement<NovikovMonomial>> {
    let rank = r.rank();
    let r = r.clone();
    proptest::collection::vec((0..rank, -3i64..=3, -6i64..=6), 1..4)
        .prop_map(move |ts| {
            let terms: Vec<_> = ts.into_iter().map(|(i, c, e)| (i, c, NovikovMonomial::t_only(Ratio::from_integer(e)))).collect();
            AlgebraElement::from_terms(&r, &terms)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative_and_commutative(
        (a, b, c) in small_element(&g24()).prop_flat_map(|a| (Just(a), small_element(&g24()), small_element(&g24())))
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn power_agrees_with_iteration(a in small_element(&g24()), k in 0u64..6) {
        let mut p = AlgebraElement::one(a.ring());
        for _ in 0..k {
            p = &p * &a;
        }
        prop_assert_eq!(a.power(k), p);
    }

    #[test]
    fn witnesses_annihilate(a in small_element(&g24())) {
        if a.is_zero() {
            return Ok(());
        }
        match is_unit(&a).unwrap() {
            UnitTest::ZeroDivisor(w) => prop_assert!((&a * &w).is_zero()),
            UnitTest::Unit => {
                if let Ok(b) = inverse(&a) {
                    prop_assert!((&a * &b).is_one());
                }
            }
        }
    }
}
