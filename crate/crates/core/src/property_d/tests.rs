use super::*;
use crate::catalog::{build_novikov, make_synthetic, STANDARD_IDS};
use crate::algebra::CoefficientMode;

fn synthetic() -> Ring<NovikovMonomial> {
    make_synthetic(CoefficientMode::Lambda).unwrap().novikov().unwrap().clone()
}

#[test]
fn g24_divisor_subring() {
    let r = build_novikov("g24").unwrap();
    let d = divisor_subring(&r);
    let texts: Vec<String> = d.iter().map(|c| c.element(&r).to_string()).collect();
    assert_eq!(texts, ["x2^2", "x1*x2", "x1^2", "x1", "1"]);
    assert_eq!(d.iter().filter(|c| c.degree == 4).count(), 1);
    let v = choose_complement(&r, &d);
    let vt: Vec<String> = v.iter().map(|c| c.element(&r).to_string()).collect();
    assert_eq!(vt, ["x1^2 - 2*x2"]);
    assert!(is_closed(&r, &d));
}

#[test]
fn projective_products_are_divisorial() {
    for id in ["cpn:1", "cpn:3", "prod:cpn:1,cpn:1", "prod:cpn:1,cpn:2", "prod:cpn:2,cpn:2"] {
        let r = build_novikov(id).unwrap();
        let d = divisor_subring(&r);
        assert_eq!(d.len(), r.rank(), "{}", id);
        assert!(choose_complement(&r, &d).is_empty());
        assert_eq!(check_property_d(&r).status, PropertyDStatus::HoldsTrivially);
    }
    let r = build_novikov("cpn:1").unwrap();
    let texts: Vec<String> = divisor_subring(&r).iter().map(|c| c.element(&r).to_string()).collect();
    assert_eq!(texts, ["x", "1"]);
}

#[test]
fn dimensions_add_up() {
    for id in STANDARD_IDS {
        let r = build_novikov(id).unwrap();
        let d = divisor_subring(&r);
        let v = choose_complement(&r, &d);
        assert_eq!(d.len() + v.len(), r.rank(), "{}", id);
        let mut all: Vec<Vec<_>> = d.iter().map(|c| c.coords.clone()).collect();
        all.extend(v.iter().map(|c| c.coords.clone()));
        assert_eq!(crate::algebra::linalg::rank(&all), r.rank());
        assert!(d.iter().any(|c| c.is_unit_class(r.unit_index())));
        assert!(is_closed(&r, &d));
    }
}

#[test]
fn g24_certificate() {
    let r = build_novikov("g24").unwrap();
    let rep = check_property_d(&r);
    assert_eq!(rep.status, PropertyDStatus::HoldsCertificate);
    assert_eq!(rep.summary, "required codegree of d is 10 > 8");
    assert_eq!(rep.min_required_codeg_d, Some(10));
    assert_eq!(rep.min_required_sum, Some(14));
    assert_eq!(rep.max_achievable_sum, Some(12));
    assert_eq!(rep.beta_cherns, [4, 8, 12, 16]);
    assert!(rep.feasible.is_empty());
    assert_eq!(rep.evidence.len(), 4 * 4);
}

#[test]
fn synthetic_is_inconclusive() {
    let r = synthetic();
    assert_eq!(r.min_chern(), 1);
    let rep = check_property_d(&r);
    assert_eq!(rep.complement_basis, ["f"]);
    assert_eq!(rep.status, PropertyDStatus::Inconclusive);
    assert!(rep.feasible.iter().any(|l| l.beta_chern == 1 && l.codeg_d == 2 && l.v == "f"));
}

#[test]
fn verdicts() {
    let g = build_novikov("g24").unwrap();
    let v = vanishing_verdict(&g, 5, 64).unwrap();
    assert!(v.satisfied, "{:?}", v.failed_legs);
    assert_eq!(v.verdict, CRITERIA_SATISFIED);
    for id in ["prod:cpn:1,cpn:1", "prod:cpn:1,cpn:2"] {
        let v = vanishing_verdict(&build_novikov(id).unwrap(), 3, 16).unwrap();
        assert_eq!(v.verdict, CRITERIA_SATISFIED);
    }
    let v = vanishing_verdict(&synthetic(), 1, 8).unwrap();
    assert_eq!(v.verdict, CRITERIA_NOT_ESTABLISHED);
    assert!(!v.failed_legs.is_empty());
}
