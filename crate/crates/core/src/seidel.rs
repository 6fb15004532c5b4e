//! Candidate Seidel elements: degree-2N integral forms, their unit
//! equations, unit classification, orders, and the section-class maps.

use std::collections::{BTreeMap, HashSet};

use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{
    element_order, inverse, AlgebraElement, CoefficientMode, ElementReport, OrderReport, OrderSummary, Ring,
    RingStructure,
};
use crate::catalog::to_universal;
use crate::error::{Error, Result};
use crate::novikov::{Convention, EnrichedMonomial, Monomial, NovikovMonomial, Scalar};

/// Default coefficient bound for the form searches.
pub const DEFAULT_COEFF_BOUND: i64 = 5;

/// One slot `u · ξ · m` of a template.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormTerm {
    pub basis: usize,
    pub monomial: NovikovMonomial,
}

/// `Σ u_k ξ_k m_k` with integer unknowns `u_k`; homogeneous of total degree 2N.
#[derive(Clone, Debug)]
pub struct CandidateForm {
    pub ring: Ring<NovikovMonomial>,
    pub label: String,
    pub terms: Vec<FormTerm>,
}

fn unknown_name(k: usize) -> String {
    if k < 26 {
        ((b'a' + k as u8) as char).to_string()
    } else {
        format!("u{}", k)
    }
}

impl CandidateForm {
    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    pub fn classes(&self) -> Vec<String> {
        self.terms.iter().map(|t| self.ring.basis()[t.basis].label.clone()).collect()
    }

    fn term(&self, k: usize) -> AlgebraElement<NovikovMonomial> {
        let t = &self.terms[k];
        AlgebraElement::basis_scaled(&self.ring, t.basis, Scalar::monomial(t.monomial.clone(), BigRational::one()))
    }

    pub fn instantiate(&self, values: &[i64]) -> AlgebraElement<NovikovMonomial> {
        assert_eq!(values.len(), self.arity(), "one value per unknown");
        let terms: Vec<(usize, i64, NovikovMonomial)> =
            self.terms.iter().zip(values).map(|(t, &v)| (t.basis, v, t.monomial.clone())).collect();
        AlgebraElement::from_terms(&self.ring, &terms)
    }

    /// Text with unknowns named from `first` on, e.g. `a + b*x2^2 * t^-4`.
    pub fn render(&self, first: usize, convention: Convention) -> String {
        let labels = self.ring.class_labels();
        self.terms
            .iter()
            .enumerate()
            .map(|(k, t)| {
                let b = &self.ring.basis()[t.basis].label;
                let mut s = unknown_name(first + k);
                if b != "1" {
                    s = format!("{}*{}", s, b);
                }
                let m = convention.apply(&t.monomial);
                if !m.is_one() {
                    s = format!("{} * {}", s, m.render(labels));
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Shift attached to a basis class so that it sits in total degree 2N.
fn lift_monomial(ring: &Ring<NovikovMonomial>, basis: usize) -> NovikovMonomial {
    let k = ring.complex_dim() - ring.basis()[basis].degree / 2;
    let t = -ring.kappa() * Ratio::from_integer(k);
    match ring.mode() {
        CoefficientMode::Universal => NovikovMonomial::new(-k, t),
        _ => NovikovMonomial::t_only(t),
    }
}

/// All degree-2N integral templates. Classes share a template when their
/// degrees agree modulo `2·min_chern`; templates are listed by descending
/// top degree, terms inside a template by descending degree.
pub fn enumerate_forms(ring: &Ring<NovikovMonomial>) -> Vec<CandidateForm> {
    let n = ring.complex_dim();
    let period = 2 * ring.min_chern().max(1);
    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, b) in ring.basis().iter().enumerate() {
        let shift = n - b.degree / 2;
        if !(0..=2 * n).contains(&shift) {
            continue;
        }
        groups.entry(b.degree.rem_euclid(period)).or_default().push(i);
    }
    let mut forms: Vec<CandidateForm> = groups
        .into_values()
        .map(|mut members| {
            members.sort_by_key(|&i| (-ring.basis()[i].degree, i));
            let terms = members.iter().map(|&i| FormTerm { basis: i, monomial: lift_monomial(ring, i) }).collect();
            let mut f = CandidateForm { ring: ring.clone(), label: String::new(), terms };
            f.label = f.render(0, Convention::Display);
            f
        })
        .collect();
    forms.sort_by_key(|f| -ring.basis()[f.terms[0].basis].degree);
    forms
}

/// `Σ c_{ij} u_i v_j = rhs` for one coordinate of `f*g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilinearEquation {
    /// The basis class and monomial this coordinate belongs to.
    pub coordinate: String,
    /// `(i, j, c)`: coefficient `c` of `u_i v_j`.
    #[serde(skip)]
    pub coefficients: Vec<(usize, usize, BigRational)>,
    pub rhs: i64,
    pub text: String,
}

impl BilinearEquation {
    pub fn evaluate(&self, u: &[i64], v: &[i64]) -> BigRational {
        self.coefficients
            .iter()
            .map(|(i, j, c)| c * BigRational::from_integer((u[*i] * v[*j]).into()))
            .sum()
    }

    /// Coefficient of `u_i v_j` (zero when absent).
    pub fn coefficient(&self, i: usize, j: usize) -> BigRational {
        self.coefficients
            .iter()
            .find(|(a, b, _)| *a == i && *b == j)
            .map(|(_, _, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct UnitEquations {
    pub left: String,
    pub right: String,
    pub coeff_bound: i64,
    pub equations: Vec<BilinearEquation>,
    /// Values of the left unknowns followed by the right ones.
    pub solutions: Vec<Vec<i64>>,
}

fn bilinear_text(coeffs: &[(usize, usize, BigRational)], nf: usize) -> String {
    let mut out = String::new();
    for (n, (i, j, c)) in coeffs.iter().enumerate() {
        let neg = c < &BigRational::zero();
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = if neg { -c.clone() } else { c.clone() };
        if !a.is_one() {
            out.push_str(&format!("{}*", a));
        }
        out.push_str(&format!("{}*{}", unknown_name(*i), unknown_name(nf + j)));
    }
    out
}

fn assignments(k: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-bound..=bound).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Bilinear system for `f*g = 𝟙` and its integer solutions with every
/// unknown in `[−bound, bound]`. Solutions are re-checked by multiplying out.
pub fn solve_unit_equations(f: &CandidateForm, g: &CandidateForm, coeff_bound: i64) -> Result<UnitEquations> {
    if f.ring.name() != g.ring.name() {
        return Err(Error::RingMismatch { left: f.ring.name().into(), right: g.ring.name().into() });
    }
    let ring = &f.ring;
    let (nf, ng) = (f.arity(), g.arity());
    let mut coords: BTreeMap<(usize, NovikovMonomial), Vec<(usize, usize, BigRational)>> = BTreeMap::new();
    for j in 0..ng {
        for i in 0..nf {
            let p = &f.term(i) * &g.term(j);
            for (b, m, c) in p.terms() {
                coords.entry((b, m.clone())).or_default().push((i, j, c.clone()));
            }
        }
    }
    let unit_key = (ring.unit_index(), NovikovMonomial::one());
    coords.entry(unit_key.clone()).or_default();
    let labels = ring.class_labels();
    let mut equations: Vec<BilinearEquation> = coords
        .into_iter()
        .map(|(key, coefficients)| {
            let rhs = i64::from(key == unit_key);
            let b = &ring.basis()[key.0].label;
            let coordinate = if key.1.is_one() { b.clone() } else { format!("{} * {}", b, key.1.render(labels)) };
            let lhs = if coefficients.is_empty() { "0".to_string() } else { bilinear_text(&coefficients, nf) };
            BilinearEquation { text: format!("{} = {}", lhs, rhs), coordinate, coefficients, rhs }
        })
        .collect();
    equations.sort_by_key(|e| (e.rhs == 0, e.coordinate.clone()));

    let us = assignments(nf, coeff_bound);
    let vs = assignments(ng, coeff_bound);
    let one = AlgebraElement::one(ring);
    let solutions: Vec<Vec<i64>> = us
        .par_iter()
        .flat_map_iter(|u| {
            let eqs = &equations;
            vs.iter()
                .filter(move |v| eqs.iter().all(|e| e.evaluate(u, v) == BigRational::from_integer(e.rhs.into())))
                .map(move |v| [u.clone(), v.clone()].concat())
                .collect::<Vec<_>>()
        })
        .collect();
    for s in &solutions {
        let prod = &f.instantiate(&s[..nf]) * &g.instantiate(&s[nf..]);
        debug_assert!(prod == one, "solution {:?} fails to multiply to 𝟙", s);
        if prod != one {
            return Err(Error::InvalidPresentation(format!("unit equations disagree with the table at {:?}", s)));
        }
    }
    Ok(UnitEquations {
        left: f.render(0, Convention::Display),
        right: g.render(nf, Convention::Display),
        coeff_bound,
        equations,
        solutions,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Completeness {
    Global { reason: String },
    WithinBound { bound: i64 },
}

#[derive(Clone, Debug)]
pub struct UnitClass {
    /// Canonical representative up to sign and Novikov monomial.
    pub element: AlgebraElement<NovikovMonomial>,
    /// Index into `UnitReport::forms`, when the class came from a template.
    pub form: Option<usize>,
    /// Inverse of `element`; integral.
    pub inverse: AlgebraElement<NovikovMonomial>,
}

#[derive(Clone, Debug)]
pub struct UnitReport {
    pub ring: Ring<NovikovMonomial>,
    pub coeff_bound: i64,
    pub route: &'static str,
    pub forms: Vec<CandidateForm>,
    pub examined: u64,
    pub classes: Vec<UnitClass>,
    pub completeness: Completeness,
}

#[derive(Serialize)]
pub struct UnitClassSummary {
    pub element: ElementReport,
    pub form: Option<usize>,
    pub inverse: ElementReport,
}

#[derive(Serialize)]
pub struct UnitReportSummary {
    pub ring: String,
    pub bounds: BoundsSummary,
    pub route: &'static str,
    pub forms: Vec<String>,
    pub examined: u64,
    pub classes: Vec<UnitClassSummary>,
    pub completeness: Completeness,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub kappa: Ratio<i64>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundsSummary {
    pub coeff_bound: i64,
    pub cap: Option<u64>,
}

impl UnitReport {
    pub fn summary(&self, convention: Convention) -> UnitReportSummary {
        UnitReportSummary {
            ring: self.ring.name().to_string(),
            bounds: BoundsSummary { coeff_bound: self.coeff_bound, cap: None },
            route: self.route,
            forms: self.forms.iter().map(|f| f.render(0, convention)).collect(),
            examined: self.examined,
            classes: self
                .classes
                .iter()
                .map(|c| UnitClassSummary {
                    element: c.element.to_report(convention),
                    form: c.form,
                    inverse: c.inverse.to_report(convention),
                })
                .collect(),
            completeness: self.completeness.clone(),
            kappa: self.ring.kappa(),
        }
    }

    pub fn class_texts(&self) -> Vec<String> {
        self.classes.iter().map(|c| c.element.to_string()).collect()
    }
}

fn integral_inverse(a: &AlgebraElement<NovikovMonomial>) -> Option<AlgebraElement<NovikovMonomial>> {
    match inverse(a) {
        Ok(b) if b.is_integral() => Some(b),
        _ => None,
    }
}

/// Units of the integral subring among the degree-2N templates, up to sign
/// and Novikov monomial.
///
/// Products of projective spaces take the monomial route: their integral
/// rings are group rings of ordered groups, so the basis monomials are all
/// the classes. Everything else is searched over each template with
/// unknowns in `[−coeff_bound, coeff_bound]`, keeping elements whose
/// inverse is integral.
pub fn classify_top_units(ring: &Ring<NovikovMonomial>, coeff_bound: i64) -> UnitReport {
    let forms = enumerate_forms(ring);
    if let RingStructure::ProjectiveProduct { .. } = ring.structure() {
        let classes = (0..ring.rank())
            .filter_map(|i| {
                let e = AlgebraElement::basis(ring, i);
                let inv = integral_inverse(&e)?;
                let form = forms.iter().position(|f| f.terms.iter().any(|t| t.basis == i));
                Some(UnitClass { element: e, form, inverse: inv })
            })
            .collect();
        return UnitReport {
            ring: ring.clone(),
            coeff_bound,
            route: "monomial",
            examined: ring.rank() as u64,
            forms,
            classes,
            completeness: Completeness::Global {
                reason: "the integral ring is the group ring of an ordered abelian group, whose units are ± group elements"
                    .into(),
            },
        };
    }

    let mut examined = 0u64;
    let mut classes: Vec<UnitClass> = Vec::new();
    let mut seen: HashSet<AlgebraElement<NovikovMonomial>> = HashSet::new();
    for (k, f) in forms.iter().enumerate() {
        let mut candidates: Vec<AlgebraElement<NovikovMonomial>> = Vec::new();
        let mut local: HashSet<AlgebraElement<NovikovMonomial>> = HashSet::new();
        for values in assignments(f.arity(), coeff_bound) {
            if values.iter().all(|&v| v == 0) {
                continue;
            }
            examined += 1;
            let c = f.instantiate(&values).canonical_up_to_unit();
            if !seen.contains(&c) && local.insert(c.clone()) {
                candidates.push(c);
            }
        }
        let found: Vec<Option<UnitClass>> = candidates
            .par_iter()
            .map(|c| integral_inverse(c).map(|inv| UnitClass { element: c.clone(), form: Some(k), inverse: inv }))
            .collect();
        for u in found.into_iter().flatten() {
            seen.insert(u.element.clone());
            classes.push(u);
        }
    }
    let completeness = match ring.structure() {
        RingStructure::Grassmannian24 => Completeness::Global {
            reason: "the unit equations between degree-compatible templates have only the integer solutions listed"
                .into(),
        },
        _ => Completeness::WithinBound { bound: coeff_bound },
    };
    UnitReport { ring: ring.clone(), coeff_bound, route: "diophantine", forms, examined, classes, completeness }
}

#[derive(Clone, Debug)]
pub struct OrderVerdict {
    pub units: UnitReport,
    pub orders: Vec<OrderReport<NovikovMonomial>>,
    pub cap: u64,
    /// Known bound on the orders, when the ring family provides one.
    pub expected_divisor: Option<u64>,
    pub all_finite: bool,
    /// Every order divides `expected_divisor` (true when there is none).
    pub all_divide: bool,
    /// Every `u^k` is `𝟙` times a single Novikov monomial.
    pub monomial_scalars: bool,
}

#[derive(Serialize)]
pub struct OrderVerdictSummary {
    pub ring: String,
    pub bounds: BoundsSummary,
    pub classes: Vec<ElementReport>,
    pub orders: Vec<OrderSummary>,
    pub expected_divisor: Option<u64>,
    pub all_finite: bool,
    pub all_divide: bool,
    pub monomial_scalars: bool,
    pub completeness: Completeness,
}

impl OrderVerdict {
    pub fn summary(&self, convention: Convention) -> OrderVerdictSummary {
        OrderVerdictSummary {
            ring: self.units.ring.name().to_string(),
            bounds: BoundsSummary { coeff_bound: self.units.coeff_bound, cap: Some(self.cap) },
            classes: self.units.classes.iter().map(|c| c.element.to_report(convention)).collect(),
            orders: self.orders.iter().map(|o| o.summary(convention)).collect(),
            expected_divisor: self.expected_divisor,
            all_finite: self.all_finite,
            all_divide: self.all_divide,
            monomial_scalars: self.monomial_scalars,
            completeness: self.units.completeness.clone(),
        }
    }
}

/// Known bound on the orders of top-degree units.
pub fn expected_order_divisor(structure: &RingStructure) -> Option<u64> {
    match structure {
        RingStructure::ProjectiveProduct { dims } => Some(dims.iter().map(|&n| n as u64 + 1).product()),
        RingStructure::Grassmannian24 => Some(4),
        RingStructure::Custom => None,
    }
}

/// Orders of every class found by [`classify_top_units`].
pub fn finite_order_verdict(ring: &Ring<NovikovMonomial>, coeff_bound: i64, cap: u64) -> Result<OrderVerdict> {
    let units = classify_top_units(ring, coeff_bound);
    let orders = units.classes.iter().map(|c| element_order(&c.element, cap)).collect::<Result<Vec<_>>>()?;
    let expected_divisor = expected_order_divisor(ring.structure());
    let all_finite = orders.iter().all(|o| o.finite);
    let all_divide = orders.iter().all(|o| match (o.order, expected_divisor) {
        (Some(k), Some(d)) => d % k == 0,
        (None, Some(_)) => false,
        (_, None) => true,
    });
    let monomial_scalars =
        orders.iter().all(|o| o.scalar.as_ref().is_some_and(|s| s.as_monomial().is_some_and(|(_, c)| c.is_one())));
    Ok(OrderVerdict { units, orders, cap, expected_divisor, all_finite, all_divide, monomial_scalars })
}

/// `c₁^vert(σ)` and `u_γ(σ)` of a section class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SectionData {
    pub c1_vert: i64,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub coupling: Ratio<i64>,
}

impl SectionData {
    pub fn new(c1_vert: i64, coupling: Ratio<i64>) -> Self {
        SectionData { c1_vert, coupling }
    }
}

/// `Φ_σ(ξ ⊗ e^{-A}) = ξ ⊗ q^{-c₁^vert(σ+A)} t^{-u(σ+A)}`, stored in the
/// display convention like every other table entry.
pub fn phi_sigma(
    x: &AlgebraElement<EnrichedMonomial>,
    s: &SectionData,
) -> Result<AlgebraElement<NovikovMonomial>> {
    let ring = x.ring();
    if ring.mode() != CoefficientMode::Enriched {
        return Err(Error::ModeMismatch(format!("phi_sigma needs enriched coefficients, got {}", ring.name())));
    }
    let target = to_universal(ring);
    let classes = ring.sphere_classes().to_vec();
    let shift = NovikovMonomial::new(s.c1_vert, s.coupling);
    x.transport(&target, |m| crate::novikov::display_phi(m, &classes).mul(&shift))
}

/// `I(γ)·PD(X) = u_γ(σ) − κ c₁^vert(σ)`.
pub fn action_maslov_from_section(s: &SectionData, kappa: Ratio<i64>) -> Ratio<i64> {
    s.coupling - kappa * Ratio::from_integer(s.c1_vert)
}
