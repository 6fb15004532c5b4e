//! The reproduction suite: nine exact checks, each with a wall-clock budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{element_order, inverse, psi, psi_inv, AlgebraElement, Ring, DEFAULT_ORDER_CAP};
use crate::catalog::{build_enriched_str, build_novikov, STANDARD_IDS};
use crate::group::{classify_gr_units, GroupSearchBounds, OrderedGroup};
use crate::novikov::{Monomial, phi, phi_enriched, rat, Convention, EnrichedMonomial, NovikovMonomial, NovikovScalar, Scalar};
use crate::parse::parse_element;
use crate::property_d::{check_property_d, vanishing_verdict, PropertyDStatus, CRITERIA_SATISFIED};
use crate::seidel::{classify_top_units, enumerate_forms, finite_order_verdict, phi_sigma, solve_unit_equations, SectionData};

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "{} [{}] {} ({} ms, limit {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

type Check = fn() -> Result<String, String>;

pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub limit: Duration,
    check: Check,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(id: &str) -> Result<Ring<NovikovMonomial>, String> {
    build_novikov(id).map_err(|e| e.to_string())
}

fn el(r: &Ring<NovikovMonomial>, s: &str) -> Result<AlgebraElement<NovikovMonomial>, String> {
    parse_element(r, s).map_err(|e| e.to_string())
}

fn g24_identities() -> Result<String, String> {
    let r = ring("g24")?;
    let x2 = el(&r, "x2")?;
    let x2sq = &x2 * &x2;
    let x2_4 = &x2sq * &x2sq;
    ensure(x2_4 == el(&r, "t^8")?, || format!("x2^4 = {}", x2_4))?;
    let v = el(&r, "x1^2 - x2")?;
    let v2 = &v * &v;
    ensure(v2 == el(&r, "x2^2")?, || format!("(x1^2 - x2)^2 = {}", v2))?;
    let w = &x2 * &v;
    ensure(w == el(&r, "t^4")?, || format!("x2*(x1^2 - x2) = {}", w))?;
    Ok(format!("x2^4 = {}; (x1^2 - x2)^2 = {}; x2*(x1^2 - x2) = {}", x2_4, v2, w))
}

fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    v.sort();
    v
}

fn g24_units() -> Result<String, String> {
    let r = ring("g24")?;
    let rep = classify_top_units(&r, 5);
    let got: BTreeSet<String> = rep.class_texts().into_iter().collect();
    let want: BTreeSet<String> = ["1", "x2", "x1^2 - x2", "x2^2"].iter().map(|s| s.to_string()).collect();
    ensure(got == want && rep.classes.len() == 4, || format!("classes {:?}", rep.class_texts()))?;

    let forms = enumerate_forms(&r);
    ensure(forms.len() == 4, || format!("{} forms", forms.len()))?;
    let e55 = solve_unit_equations(&forms[0], &forms[0], 5).map_err(|e| e.to_string())?;
    let want55 = sorted(vec![vec![1, 0, 1, 0], vec![-1, 0, -1, 0], vec![0, 1, 0, 1], vec![0, -1, 0, -1]]);
    ensure(sorted(e55.solutions.clone()) == want55, || format!("(5,5) solutions {:?}", e55.solutions))?;
    // a,b are the left unknowns (0,1); c,d the right ones (0,1).
    let unit = &e55.equations[0];
    let other = &e55.equations[1];
    let c = |e: &crate::seidel::BilinearEquation, i, j| e.coefficient(i, j);
    ensure(
        unit.rhs == 1 && c(unit, 0, 0) == rat(1) && c(unit, 1, 1) == rat(1) && c(unit, 0, 1) == rat(0) && c(unit, 1, 0) == rat(0),
        || format!("(5,5) unit equation {}", unit.text),
    )?;
    ensure(
        other.rhs == 0 && c(other, 0, 1) == rat(1) && c(other, 1, 0) == rat(1) && c(other, 0, 0) == rat(0),
        || format!("(5,5) second equation {}", other.text),
    )?;

    let e77 = solve_unit_equations(&forms[2], &forms[2], 5).map_err(|e| e.to_string())?;
    let want77 = sorted(vec![vec![0, 1, 1, -1], vec![-1, 1, 0, -1], vec![0, -1, -1, 1], vec![1, -1, 0, 1]]);
    ensure(sorted(e77.solutions.clone()) == want77, || format!("(7,7) solutions {:?}", e77.solutions))?;
    let (u, o) = (&e77.equations[0], &e77.equations[1]);
    ensure(
        u.rhs == 1 && c(u, 0, 0) == rat(2) && c(u, 1, 0) == rat(1) && c(u, 0, 1) == rat(1) && c(u, 1, 1) == rat(0),
        || format!("(7,7) unit equation {}", u.text),
    )?;
    let bd_only = (0..2).all(|i| (0..2).all(|j| c(o, i, j) - c(u, i, j) == rat(i64::from(i == 1 && j == 1))));
    ensure(o.rhs == 0 && bd_only, || format!("(7,7) second equation {}", o.text))?;

    let e68 = solve_unit_equations(&forms[1], &forms[3], 5).map_err(|e| e.to_string())?;
    ensure(e68.solutions.is_empty(), || format!("(6,8) solutions {:?}", e68.solutions))?;
    Ok(format!(
        "classes {{{}}}; (5,5): {}, {}; (7,7): {}, {}; (6,8): {} and no solutions",
        rep.class_texts().join(", "),
        unit.text,
        other.text,
        u.text,
        o.text,
        e68.equations.iter().map(|e| e.text.clone()).collect::<Vec<_>>().join(", ")
    ))
}

fn g24_orders() -> Result<String, String> {
    let r = ring("g24")?;
    let v = finite_order_verdict(&r, 5, DEFAULT_ORDER_CAP).map_err(|e| e.to_string())?;
    ensure(v.orders.len() == 4, || format!("{} classes", v.orders.len()))?;
    let mut parts = Vec::new();
    for o in &v.orders {
        let k = o.order.ok_or_else(|| format!("{} has no order within the cap", o.subject))?;
        ensure(4 % k == 0, || format!("{} has order {}", o.subject, k))?;
        let lambda = o.scalar.as_ref().ok_or("missing scalar")?;
        ensure(lambda.as_monomial().is_some(), || format!("{}^{} = 1 * ({})", o.subject, k, lambda))?;
        ensure(o.subject.power(k) == AlgebraElement::scalar(&r, lambda.clone()), || "power mismatch".into())?;
        parts.push(format!("({})^{} = 1 * {}", o.subject, k, lambda));
    }
    Ok(parts.join("; "))
}

fn monomial_power(x: &AlgebraElement<NovikovMonomial>, k: i64) -> Result<AlgebraElement<NovikovMonomial>, String> {
    if k >= 0 {
        Ok(x.power(k as u64))
    } else {
        Ok(inverse(x).map_err(|e| e.to_string())?.power((-k) as u64))
    }
}

fn product_orders() -> Result<String, String> {
    let mut parts = Vec::new();
    for (m, n) in [(1i64, 1i64), (1, 2), (2, 2)] {
        let r = ring(&format!("prod:cpn:{},cpn:{}", m, n))?;
        let a = el(&r, "x_1")?;
        let b = el(&r, "x_2")?;
        let bound = ((m + 1) * (n + 1)) as u64;
        let mut count = 0;
        for f in -(m + 1)..=2 * (m + 1) {
            for g in -(n + 1)..=2 * (n + 1) {
                let u = &monomial_power(&a, f)? * &monomial_power(&b, g)?;
                let o = element_order(&u, DEFAULT_ORDER_CAP).map_err(|e| e.to_string())?;
                let k = o.order.ok_or_else(|| format!("x_1^{} x_2^{} has no order within the cap", f, g))?;
                ensure(bound % k == 0, || format!("x_1^{} x_2^{} has order {}", f, g, k))?;
                count += 1;
            }
        }
        parts.push(format!("CP^{}xCP^{}: {} monomials, orders divide {}", m, n, count, bound));
    }
    Ok(parts.join("; "))
}

fn ordered_units() -> Result<String, String> {
    let bounds = GroupSearchBounds { support: 3, coeff: 2, exponent: 4 };
    let groups = [
        OrderedGroup::cpn(2),
        OrderedGroup::new(
            vec!["a".into(), "b".into()],
            vec![vec![Ratio::new(1, 2), Ratio::from_integer(0)], vec![Ratio::from_integer(0), Ratio::new(1, 3)]],
        )
        .map_err(|e| e.to_string())?,
    ];
    let mut parts = Vec::new();
    for g in &groups {
        let rep = classify_gr_units(g, bounds);
        let side = 2 * bounds.exponent + 1;
        let monomials = 2 * side.pow(g.rank() as u32) as usize;
        ensure(rep.only_signed_monomials, || format!("non-monomial unit in rank {}", g.rank()))?;
        ensure(rep.units.len() == monomials, || format!("rank {}: {} units, expected {}", g.rank(), rep.units.len(), monomials))?;
        parts.push(format!("rank {}: {} candidates, {} units, all ±g", g.rank(), rep.examined, rep.units.len()));
    }
    Ok(parts.join("; "))
}

fn property_d_certificates() -> Result<String, String> {
    let g = check_property_d(&ring("g24")?);
    ensure(g.status == PropertyDStatus::HoldsCertificate, || format!("g24 status {:?}", g.status))?;
    ensure(g.min_required_codeg_d == Some(10) && g.complex_dim == 4, || g.summary.clone())?;
    let mut parts = vec![format!("g24: {} ({})", g.status.as_str(), g.summary)];
    for (m, n) in [(1, 1), (1, 2), (2, 2)] {
        let p = check_property_d(&ring(&format!("prod:cpn:{},cpn:{}", m, n))?);
        ensure(p.status == PropertyDStatus::HoldsTrivially, || format!("CP^{}xCP^{}: {:?}", m, n, p.status))?;
        parts.push(format!("CP^{}xCP^{}: {}", m, n, p.status.as_str()));
    }
    Ok(parts.join("; "))
}

/// `±u^i v^j t^k` built from the classified units, until `want` distinct ones.
fn sample_units(r: &Ring<NovikovMonomial>, want: usize) -> Vec<AlgebraElement<NovikovMonomial>> {
    let classes: Vec<_> = classify_top_units(r, 2).classes.into_iter().map(|c| c.element).collect();
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    'outer: for k in [0i64, 1, -2, 3] {
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i..] {
                for sign in [1i64, -1] {
                    let u = (a * b).mul_monomial(&NovikovMonomial::t_only(Ratio::from_integer(k)));
                    let u = u.scale(&Scalar::integer(sign));
                    if seen.insert(u.to_string()) {
                        out.push(u);
                        if out.len() == want {
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    out
}

fn structural_suite() -> Result<String, String> {
    let mut units = 0usize;
    let mut parts = Vec::new();
    let per_ring = 100usize.div_ceil(STANDARD_IDS.len());
    for id in STANDARD_IDS {
        let r = ring(id)?;
        let rep = r.check_structure();
        ensure(rep.ok(), || format!("{}: {:?}", id, rep.failures))?;
        let take = per_ring.min(100 - units);
        let sample = sample_units(&r, take);
        for u in &sample {
            let inv = inverse(u).map_err(|e| format!("{}: {}: {}", id, u, e))?;
            ensure((u * &inv).is_one(), || format!("{}: {} * inverse != 1", id, u))?;
        }
        units += sample.len();
        parts.push(format!("{} ({} triples)", id, r.rank().pow(3)));
    }
    ensure(units >= 100, || format!("only {} units sampled", units))?;
    Ok(format!("associative, commutative, unital, graded: {}; {} units inverted", parts.join(", "), units))
}

fn random_scalar(rng: &mut ChaCha8Rng) -> NovikovScalar {
    let n = rng.gen_range(1..=3);
    let mut s = Scalar::zero();
    while s.is_zero() {
        for _ in 0..n {
            let t = Ratio::new(rng.gen_range(-12..=12), rng.gen_range(1..=4));
            let q = rng.gen_range(-3..=3);
            let c = crate::novikov::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            s.add_term(NovikovMonomial::new(q, t), c);
        }
    }
    s
}

fn map_coherence() -> Result<String, String> {
    let mut pairs = 0;
    for id in STANDARD_IDS {
        let r = build_enriched_str(id).map_err(|e| e.to_string())?;
        let classes = r.sphere_classes().to_vec();
        for a in &classes {
            for b in &classes {
                let joint = phi(&[a, b]);
                ensure(joint == phi(&[a]).mul(&phi(&[b])), || format!("{}: phi({} + {})", id, a.label, b.label))?;
                pairs += 1;
            }
        }
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                let mi = EnrichedMonomial::class(i);
                let mj = EnrichedMonomial::class(j);
                let m = mi.mul(&mj);
                let lhs = phi_enriched(&m, &classes);
                let rhs = phi_enriched(&mi, &classes).mul(&phi_enriched(&mj, &classes));
                ensure(lhs == rhs, || format!("{}: phi on e^-A e^-B", id))?;
            }
        }
        let zero = SectionData::new(0, Ratio::from_integer(0));
        for i in 0..r.rank() {
            for k in 0..3 {
                let m = EnrichedMonomial::new((0..classes.len()).map(|c| k - c as i64).collect());
                let x = AlgebraElement::basis_scaled(&r, i, Scalar::monomial(m.clone(), rat(1)));
                let y = phi_sigma(&x, &zero).map_err(|e| e.to_string())?;
                let (b, stored, c) = y.terms().next().ok_or("phi_sigma produced zero")?;
                let faithful = Convention::PhiFaithful.apply(stored);
                ensure(b == i && c == &rat(1) && faithful == phi_enriched(&m, &classes), || {
                    format!("{}: phi_sigma(0,0) on basis {}", id, i)
                })?;
            }
        }
        let u = ring(&format!("{}@universal", id))?;
        let l = ring(id)?;
        for i in 0..l.rank() {
            let v = AlgebraElement::basis(&l, i);
            let back = psi(&psi_inv(&v, &u).map_err(|e| e.to_string())?, &l).map_err(|e| e.to_string())?;
            ensure(back == v, || format!("{}: psi(psi_inv({})) = {}", id, v, back))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..1000 {
        let a = random_scalar(&mut rng);
        let b = random_scalar(&mut rng);
        let va = a.valuation().map_err(|e| e.to_string())?;
        let vb = b.valuation().map_err(|e| e.to_string())?;
        let vab = (&a * &b).valuation().map_err(|e| e.to_string())?;
        ensure(vab == va + vb, || format!("valuation of ({})({}) is {}", a, b, vab))?;
    }
    Ok(format!("{} class pairs, psi round trips, phi_sigma(0,0), 1000 valuation pairs", pairs))
}

fn verdicts() -> Result<String, String> {
    let ids = ["g24", "prod:cpn:1,cpn:1", "prod:cpn:1,cpn:2", "prod:cpn:2,cpn:2"];
    let mut runs = 0;
    for id in ids {
        let r = ring(id)?;
        for bound in 2..=10 {
            for cap in 8..=64u64 {
                let v = vanishing_verdict(&r, bound, cap).map_err(|e| e.to_string())?;
                ensure(v.verdict == CRITERIA_SATISFIED, || format!("{} bound {} cap {}: {:?}", id, bound, cap, v.failed_legs))?;
                runs += 1;
            }
        }
    }
    Ok(format!("{} for {} over bounds 2..10 and caps 8..64 ({} runs)", CRITERIA_SATISFIED, ids.join(", "), runs))
}

pub fn criteria() -> Vec<Criterion> {
    let c = |id, title, secs, check| Criterion { id, title, limit: Duration::from_secs(secs), check };
    vec![
        c(1, "G(2,4) identities", 1, g24_identities as Check),
        c(2, "G(2,4) unit classes and unit equations", 60, g24_units),
        c(3, "G(2,4) unit orders divide 4", 1, g24_orders),
        c(4, "monomial units of CP^m x CP^n have order dividing (m+1)(n+1)", 10, product_orders),
        c(5, "ordered group rings have only trivial units", 120, ordered_units),
        c(6, "Property D certificates", 1, property_d_certificates),
        c(7, "structural suite over the catalog", 60, structural_suite),
        c(8, "coherence of phi, psi, phi_sigma and the valuation", 10, map_coherence),
        c(9, "vanishing verdicts are stable", 120, verdicts),
    ]
}

impl Criterion {
    pub fn run(&self) -> CriterionResult {
        let start = Instant::now();
        let outcome = (self.check)();
        let elapsed = start.elapsed();
        let within = elapsed <= self.limit;
        let (passed, detail) = match outcome {
            Ok(d) if within => (true, d),
            Ok(d) => (false, format!("over time budget; {}", d)),
            Err(e) => (false, e),
        };
        CriterionResult {
            id: self.id,
            title: self.title,
            passed,
            elapsed_ms: elapsed.as_millis(),
            limit_ms: self.limit.as_millis(),
            detail,
        }
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    criteria().iter().map(Criterion::run).collect()
}
