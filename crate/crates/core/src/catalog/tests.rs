use num_rational::Ratio;

use super::*;
use crate::algebra::{AlgebraElement, RingDescriptor};
use crate::novikov::{rat, Monomial, NovikovMonomial, Scalar};
use crate::parse::parse_element;

fn el(r: &Ring<NovikovMonomial>, s: &str) -> AlgebraElement<NovikovMonomial> {
    parse_element(r, s).unwrap()
}

fn t(e: i64) -> NovikovMonomial {
    NovikovMonomial::t_only(Ratio::from_integer(e))
}

#[test]
fn g24_basis_degree_table() {
    let r = build_novikov("g24").unwrap();
    let got: Vec<(String, i64)> = r.basis().iter().map(|b| (b.label.clone(), b.degree)).collect();
    let want = [("x2^2", 0), ("x1*x2", 2), ("x1^2", 4), ("x2", 4), ("x1", 6), ("1", 8)];
    assert_eq!(got, want.iter().map(|(l, d)| (l.to_string(), *d)).collect::<Vec<_>>());
    assert_eq!(r.complex_dim(), 4);
    assert_eq!(r.min_chern(), 4);
    assert_eq!(r.kappa(), Ratio::from_integer(1));
}

#[test]
fn g24_table_entries() {
    let r = build_novikov("g24").unwrap();
    let x1 = r.basis_index("x1").unwrap();
    let x1x2 = r.basis_index("x1*x2").unwrap();
    let x22 = r.basis_index("x2^2").unwrap();
    let e = AlgebraElement::from_coords(&r, r.product(x1, x1x2).to_vec()).unwrap();
    let want = &AlgebraElement::basis(&r, x22) + &AlgebraElement::scalar(&r, Scalar::monomial(t(4), rat(1)));
    assert_eq!(e, want);
    let e = AlgebraElement::from_coords(&r, r.product(x22, x1).to_vec()).unwrap();
    assert_eq!(e, AlgebraElement::basis_scaled(&r, x1, Scalar::monomial(t(4), rat(1))));
}

#[test]
fn g24_relations_hold() {
    let r = build_novikov("g24").unwrap();
    assert!(el(&r, "x1^3 - 2*x1*x2").is_zero());
    assert_eq!(el(&r, "x1^2*x2 - x2^2"), AlgebraElement::scalar(&r, Scalar::monomial(t(4), rat(1))));
    assert_eq!(r.relations().len(), 2);
    let rel = &r.relations()[1];
    assert_eq!(rel.head, vec![2, 1]);
    assert_eq!(AlgebraElement::from_coords(&r, rel.replacement.clone()).unwrap(), el(&r, "x2^2 + t^4"));
}

#[test]
fn cpn_products() {
    let r = build_novikov("cpn:1").unwrap();
    assert_eq!(el(&r, "x*x"), AlgebraElement::scalar(&r, Scalar::monomial(t(2), rat(1))));
    let r = build_novikov("cpn:2").unwrap();
    assert_eq!(el(&r, "x*x").to_string(), "x^2");
    assert_eq!(el(&r, "x^2*x"), AlgebraElement::scalar(&r, Scalar::monomial(t(3), rat(1))));
    for n in 1..=4 {
        let r = build_novikov(&format!("cpn:{}", n)).unwrap();
        assert_eq!(r.min_chern(), n + 1);
        for k in 0..=n {
            let b = r.basis_index(&monomial_label(&["x".into()], &[k as u32])).unwrap();
            assert_eq!(r.basis()[b].degree, 2 * n - 2 * k);
            for j in 0..=(n - k) {
                let lhs = el(&r, &format!("x^{}*x^{}", k, j));
                let rhs = AlgebraElement::by_label(&r, &monomial_label(&["x".into()], &[(k + j) as u32])).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn universal_mode_carries_q() {
    let r = build_novikov("cpn:1@universal").unwrap();
    assert_eq!(el(&r, "x*x"), AlgebraElement::scalar(&r, Scalar::monomial(NovikovMonomial::qt(2, 2), rat(1))));
    let r = build_novikov("g24@universal").unwrap();
    assert_eq!(el(&r, "x2^2*x2^2"), AlgebraElement::scalar(&r, Scalar::monomial(NovikovMonomial::qt(8, 8), rat(1))));
}

#[test]
fn enriched_mode_keeps_classes() {
    let r = build_enriched_str("prod:cpn:1,cpn:1").unwrap();
    assert_eq!(r.sphere_classes().len(), 2);
    let a = parse_element(&r, "x_1*x_1").unwrap();
    assert_eq!(a, AlgebraElement::scalar(&r, Scalar::monomial(EnrichedMonomial::class(0), rat(1))));
    let b = parse_element(&r, "x_2^2").unwrap();
    assert_eq!(b, AlgebraElement::scalar(&r, Scalar::monomial(EnrichedMonomial::class(1), rat(1))));
}

#[test]
fn product_kunneth() {
    let r = build_novikov("prod:cpn:1,cpn:1").unwrap();
    assert_eq!(el(&r, "x_1*x_1"), AlgebraElement::scalar(&r, Scalar::monomial(t(2), rat(1))));
    assert_eq!(el(&r, "x_1*x_2").to_string(), "x_1*x_2");
    let r = build_novikov("prod:cpn:1,cpn:2").unwrap();
    let sq = el(&r, "(x_1*x_2)^2");
    assert_eq!(sq, AlgebraElement::by_label(&r, "x_2^2").unwrap().mul_monomial(&t(2)));
}

#[test]
fn mode_conflicts_are_rejected() {
    assert!(matches!(build_str("prod:cpn:1@enriched,cpn:1@lambda"), Err(Error::ModeMismatch(_))));
    let ids = vec![CatalogId::cpn(1).with_mode(CoefficientMode::Universal), CatalogId::cpn(1)];
    assert!(matches!(make_product(&ids, CoefficientMode::Lambda), Err(Error::ModeMismatch(_))));
    assert!(matches!(build_str("cpn:0"), Err(Error::InvalidDimension(0))));
    assert!(matches!(make_cpn(0, CoefficientMode::Lambda), Err(Error::InvalidDimension(0))));
    assert!(matches!(build_str("gr:2,5"), Err(Error::UnknownRing(_))));
}

#[test]
fn ids_round_trip() {
    for s in ["cpn:3", "g24@universal", "prod:cpn:1,cpn:2", "prod:cpn:1@enriched,cpn:1@enriched"] {
        assert_eq!(s.parse::<CatalogId>().unwrap().to_string(), s);
    }
    assert_eq!(build_str("prod:cpn:1,cpn:1@enriched").unwrap().mode(), CoefficientMode::Enriched);
}

#[test]
fn every_catalog_ring_is_a_graded_algebra() {
    for id in STANDARD_IDS {
        for mode in ["enriched", "universal", "lambda"] {
            let name = format!("{}@{}", id, mode);
            let rep = match build_str(&name).unwrap() {
                CatalogRing::Enriched(r) => r.check_structure(),
                CatalogRing::Novikov(r) => r.check_structure(),
            };
            assert!(rep.ok(), "{}: {:?}", name, rep.failures);
        }
    }
}

fn same_table(a: &RingDescriptor<EnrichedMonomial>, b: &RingDescriptor<EnrichedMonomial>) -> bool {
    let n = a.rank();
    if n != b.rank() {
        return false;
    }
    let map: Vec<usize> = (0..n)
        .map(|i| b.basis().iter().position(|c| c.exponents == a.basis()[i].exponents).unwrap())
        .collect();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| a.product(i, j)[k] == b.product(map[i], map[j])[map[k]])))
}

#[test]
fn product_is_associative_up_to_relabeling() {
    let a = make_cpn_enriched(1, Ratio::from_integer(1)).unwrap();
    let b = make_cpn_enriched(2, Ratio::from_integer(1)).unwrap();
    let c = make_cpn_enriched(1, Ratio::from_integer(1)).unwrap();
    let flat = make_product_enriched(&[a.clone(), b.clone(), c.clone()]).unwrap();
    let left = make_product_enriched(&[make_product_enriched(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
    let right = make_product_enriched(&[a, make_product_enriched(&[b, c]).unwrap()]).unwrap();
    assert!(same_table(&flat, &left));
    assert!(same_table(&flat, &right));
}

#[test]
fn intersection_duals() {
    let r = build_novikov("g24").unwrap();
    let dual = |label: &str| {
        let v = r.intersection_dual(r.basis_index(label).unwrap()).unwrap();
        let coords = v.into_iter().map(Scalar::constant).collect();
        AlgebraElement::from_coords(&r, coords).unwrap()
    };
    assert_eq!(dual("1"), el(&r, "x2^2"));
    assert_eq!(dual("x1"), el(&r, "x1*x2"));
    assert_eq!(dual("x1^2"), el(&r, "x1^2 - x2"));
    for n in 1..=4i64 {
        let r = build_novikov(&format!("cpn:{}", n)).unwrap();
        for k in 0..=n {
            let i = r.basis_index(&monomial_label(&["x".into()], &[k as u32])).unwrap();
            let v = r.intersection_dual(i).unwrap();
            let j = r.basis_index(&monomial_label(&["x".into()], &[(n - k) as u32])).unwrap();
            for (m, c) in v.iter().enumerate() {
                assert_eq!(c, &rat(i64::from(m == j)));
            }
        }
    }
}

#[test]
fn duals_are_dual() {
    for id in STANDARD_IDS {
        let r = build_novikov(id).unwrap();
        let p = r.pairing();
        for i in 0..r.rank() {
            let d = r.intersection_dual(i).unwrap();
            for j in 0..r.rank() {
                let s: num_rational::BigRational = (0..r.rank()).map(|k| &p[j][k] * &d[k]).sum();
                assert_eq!(s, rat(i64::from(i == j)), "{} {} {}", id, i, j);
            }
        }
    }
}

#[test]
fn lambda_is_q_stripped_universal() {
    let u = build_novikov("g24@universal").unwrap();
    let l = build_novikov("g24").unwrap();
    let c = u.lambda_companion();
    assert_eq!(c.name(), l.name());
    for i in 0..u.rank() {
        for j in 0..u.rank() {
            assert_eq!(c.product(i, j), l.product(i, j));
            for s in u.product(i, j) {
                for (m, _) in s.terms() {
                    assert_eq!(Ratio::from_integer(m.q), m.t);
                    assert!(!m.is_one() || i == j || true);
                }
            }
        }
    }
}
