//! Unit tests, inverses, element orders and the ψ isomorphism.

use num_rational::Ratio;
use serde::Serialize;

use super::element::{AlgebraElement, ElementReport};
use super::linalg::{scalar_kernel, scalar_solve, ScalarSolve};
use super::ring::{CoefficientMode, Ring};
use crate::error::{Error, Result};
use crate::novikov::{Convention, Monomial, NovikovMonomial, Scalar};

/// Default cap on the order search.
pub const DEFAULT_ORDER_CAP: u64 = 64;

/// Matrix of `w ↦ a * w`; column `j` holds the coordinates of `a * ξ_j`.
pub fn multiplication_matrix<M: Monomial>(a: &AlgebraElement<M>) -> Vec<Vec<Scalar<M>>> {
    let ring = a.ring();
    let n = ring.rank();
    let cols: Vec<AlgebraElement<M>> = (0..n).map(|j| a * &AlgebraElement::basis(ring, j)).collect();
    (0..n).map(|i| (0..n).map(|j| cols[j].coord(i).clone()).collect()).collect()
}

/// Outcome of [`is_unit`].
#[derive(Clone, Debug)]
pub enum UnitTest<M: Monomial> {
    Unit,
    /// `a * witness = 0`, witness nonzero.
    ZeroDivisor(AlgebraElement<M>),
}

impl<M: Monomial> UnitTest<M> {
    pub fn is_unit(&self) -> bool {
        matches!(self, UnitTest::Unit)
    }

    pub fn witness(&self) -> Option<&AlgebraElement<M>> {
        match self {
            UnitTest::Unit => None,
            UnitTest::ZeroDivisor(w) => Some(w),
        }
    }
}

/// Invertibility of multiplication by `a` over the coefficient field.
pub fn is_unit<M: Monomial>(a: &AlgebraElement<M>) -> Result<UnitTest<M>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let m = multiplication_matrix(a);
    match scalar_kernel(&m, a.ring().rank()) {
        None => Ok(UnitTest::Unit),
        Some(v) => {
            let w = AlgebraElement::from_coords(a.ring(), v)?.primitive();
            debug_assert!((a * &w).is_zero());
            Ok(UnitTest::ZeroDivisor(w))
        }
    }
}

/// `a⁻¹` with `a * a⁻¹ = 𝟙`.
pub fn inverse<M: Monomial>(a: &AlgebraElement<M>) -> Result<AlgebraElement<M>> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ring = a.ring();
    if let Some(s) = a.as_unit_multiple() {
        if let Some(inv) = s.inverse_monomial() {
            return Ok(AlgebraElement::scalar(ring, inv));
        }
    }
    let m = multiplication_matrix(a);
    let rhs = AlgebraElement::one(ring).coords().to_vec();
    match scalar_solve(&m, &rhs) {
        ScalarSolve::Unique(x) => AlgebraElement::from_coords(ring, x),
        ScalarSolve::Singular(v) => {
            let w = AlgebraElement::from_coords(ring, v)?.primitive();
            Err(Error::NotAUnit { witness: w.to_string() })
        }
        ScalarSolve::NonFinite => Err(Error::NonFiniteInverse),
    }
}

/// Result of the order search.
#[derive(Clone, Debug)]
pub struct OrderReport<M: Monomial> {
    pub subject: AlgebraElement<M>,
    pub finite: bool,
    pub order: Option<u64>,
    pub scalar: Option<Scalar<M>>,
    pub search_cap: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderSummary {
    pub subject: ElementReport,
    pub finite: bool,
    pub order: Option<u64>,
    pub scalar: Option<String>,
    pub search_cap: u64,
}

impl<M: Monomial> OrderReport<M> {
    pub fn summary(&self, convention: Convention) -> OrderSummary {
        let labels = self.subject.ring().class_labels().to_vec();
        OrderSummary {
            subject: self.subject.to_report(convention),
            finite: self.finite,
            order: self.order,
            scalar: self.scalar.as_ref().map(|s| s.map_monomials(|m| convention.apply(m)).render(&labels)),
            search_cap: self.search_cap,
        }
    }
}

/// Smallest `k ≤ cap` with `a^k = 𝟙 ⊗ λ`. Hitting the cap is inconclusive.
pub fn element_order<M: Monomial>(a: &AlgebraElement<M>, cap: u64) -> Result<OrderReport<M>> {
    if let UnitTest::ZeroDivisor(w) = is_unit(a)? {
        return Err(Error::NotAUnit { witness: w.to_string() });
    }
    let mut p = a.clone();
    for k in 1..=cap {
        if let Some(lambda) = p.as_unit_multiple() {
            return Ok(OrderReport {
                subject: a.clone(),
                finite: true,
                order: Some(k),
                scalar: Some(lambda.clone()),
                search_cap: cap,
            });
        }
        p = &p * a;
    }
    Ok(OrderReport { subject: a.clone(), finite: false, order: None, scalar: None, search_cap: cap })
}

/// Total degree of `ξ ⊗ q^a t^b` in stored exponents: `deg ξ − 2a`.
pub fn total_degree(ring: &Ring<NovikovMonomial>, basis: usize, m: &NovikovMonomial) -> i64 {
    ring.basis()[basis].degree - 2 * m.q
}

/// `ψ`: strip q from a degree-2N element of a universal ring.
pub fn psi(x: &AlgebraElement<NovikovMonomial>, target: &Ring<NovikovMonomial>) -> Result<AlgebraElement<NovikovMonomial>> {
    let ring = x.ring();
    if ring.mode() != CoefficientMode::Universal {
        return Err(Error::ModeMismatch(format!("psi expects a universal ring, got {}", ring.name())));
    }
    if target.mode() != CoefficientMode::Lambda {
        return Err(Error::ModeMismatch(format!("psi targets a lambda ring, got {}", target.name())));
    }
    let top = 2 * ring.complex_dim();
    for (i, m, _) in x.terms() {
        let degree = total_degree(ring, i, m);
        if degree != top {
            let term = AlgebraElement::basis_scaled(ring, i, Scalar::monomial(m.clone(), num_traits::One::one()));
            return Err(Error::NotHomogeneous { term: term.to_string(), degree, expected: top });
        }
    }
    x.transport(target, |m| NovikovMonomial::t_only(m.t))
}

/// `ψ⁻¹`: attach `q` so every term has total degree 2N.
pub fn psi_inv(x: &AlgebraElement<NovikovMonomial>, target: &Ring<NovikovMonomial>) -> Result<AlgebraElement<NovikovMonomial>> {
    if target.mode() != CoefficientMode::Universal {
        return Err(Error::ModeMismatch(format!("psi_inv targets a universal ring, got {}", target.name())));
    }
    if x.ring().rank() != target.rank() {
        return Err(Error::RingMismatch { left: x.ring().name().to_string(), right: target.name().to_string() });
    }
    let n = target.complex_dim();
    let coords = x
        .coords()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let shift = NovikovMonomial::new(-(n - target.basis()[i].degree / 2), Ratio::from_integer(0));
            s.map_monomials(|m| NovikovMonomial::new(m.q, m.t).mul(&shift))
        })
        .collect();
    AlgebraElement::from_coords(target, coords)
}
