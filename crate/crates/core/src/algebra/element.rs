use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ring::{Ring, RingDescriptor};
use crate::error::{Error, Result};
use crate::novikov::{Convention, Monomial, NovikovMonomial, Scalar};

/// A Novikov-scalar combination of basis classes of one ring.
#[derive(Clone, Debug)]
pub struct AlgebraElement<M: Monomial> {
    ring: Ring<M>,
    coords: Vec<Scalar<M>>,
}

impl<M: Monomial> PartialEq for AlgebraElement<M> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.name() == other.ring.name() && self.coords == other.coords
    }
}

impl<M: Monomial> Eq for AlgebraElement<M> {}

impl<M: Monomial> std::hash::Hash for AlgebraElement<M> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ring.name().hash(state);
        self.coords.hash(state);
    }
}

fn same_ring<M: Monomial>(a: &RingDescriptor<M>, b: &RingDescriptor<M>) -> Result<()> {
    if a.name() == b.name() && a.rank() == b.rank() {
        Ok(())
    } else {
        Err(Error::RingMismatch { left: a.name().to_string(), right: b.name().to_string() })
    }
}

impl<M: Monomial> AlgebraElement<M> {
    pub fn zero(ring: &Ring<M>) -> Self {
        AlgebraElement { ring: Arc::clone(ring), coords: vec![Scalar::zero(); ring.rank()] }
    }

    /// The fundamental class `𝟙`.
    pub fn one(ring: &Ring<M>) -> Self {
        AlgebraElement::basis(ring, ring.unit_index())
    }

    pub fn basis(ring: &Ring<M>, i: usize) -> Self {
        AlgebraElement::basis_scaled(ring, i, Scalar::one())
    }

    pub fn basis_scaled(ring: &Ring<M>, i: usize, s: Scalar<M>) -> Self {
        let mut e = AlgebraElement::zero(ring);
        e.coords[i] = s;
        e
    }

    /// `𝟙 ⊗ λ`.
    pub fn scalar(ring: &Ring<M>, s: Scalar<M>) -> Self {
        AlgebraElement::basis_scaled(ring, ring.unit_index(), s)
    }

    pub fn by_label(ring: &Ring<M>, label: &str) -> Option<Self> {
        ring.basis_index(label).map(|i| AlgebraElement::basis(ring, i))
    }

    pub fn from_coords(ring: &Ring<M>, coords: Vec<Scalar<M>>) -> Result<Self> {
        if coords.len() != ring.rank() {
            return Err(Error::InvalidPresentation(format!(
                "expected {} coordinates for {}, got {}",
                ring.rank(),
                ring.name(),
                coords.len()
            )));
        }
        Ok(AlgebraElement { ring: Arc::clone(ring), coords })
    }

    /// Integer combination of basis classes, each times a monomial.
    pub fn from_terms(ring: &Ring<M>, terms: &[(usize, i64, M)]) -> Self {
        let mut e = AlgebraElement::zero(ring);
        for (i, c, m) in terms {
            e.coords[*i].add_term(m.clone(), BigRational::from_integer(BigInt::from(*c)));
        }
        e
    }

    pub fn ring(&self) -> &Ring<M> {
        &self.ring
    }

    pub fn coords(&self) -> &[Scalar<M>] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &Scalar<M> {
        &self.coords[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_unit_multiple().is_some_and(Scalar::is_one)
    }

    /// `λ` when the element is `𝟙 ⊗ λ` with `λ ≠ 0`.
    pub fn as_unit_multiple(&self) -> Option<&Scalar<M>> {
        let u = self.ring.unit_index();
        let only_unit = self.coords.iter().enumerate().all(|(i, c)| i == u || c.is_zero());
        (only_unit && !self.coords[u].is_zero()).then(|| &self.coords[u])
    }

    /// All coefficients are integers (membership in the integral subring).
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Scalar::is_integral)
    }

    /// `(basis index, monomial, coefficient)` for every nonzero term, in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &M, &BigRational)> {
        self.coords.iter().enumerate().flat_map(|(i, s)| s.terms().rev().map(move |(m, c)| (i, m, c)))
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coords.len()).filter(|&i| !self.coords[i].is_zero()).collect()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(AlgebraElement { ring: Arc::clone(&self.ring), coords })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(AlgebraElement { ring: Arc::clone(&self.ring), coords })
    }

    /// Quantum product: bilinear extension of the structure constants.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        same_ring(&self.ring, &other.ring)?;
        let n = self.ring.rank();
        let mut out = vec![Scalar::zero(); n];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, s) in self.ring.product(i, j).iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = &out[k] + &(&ab * s);
                    }
                }
            }
        }
        Ok(AlgebraElement { ring: Arc::clone(&self.ring), coords: out })
    }

    /// Square-and-multiply; `a^0 = 𝟙`.
    pub fn power(&self, k: u64) -> Self {
        let mut acc = AlgebraElement::one(&self.ring);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, s: &Scalar<M>) -> Self {
        AlgebraElement { ring: Arc::clone(&self.ring), coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn mul_monomial(&self, m: &M) -> Self {
        AlgebraElement { ring: Arc::clone(&self.ring), coords: self.coords.iter().map(|c| c.mul_monomial(m)).collect() }
    }

    pub fn map_coeffs<F: Fn(&Scalar<M>) -> Scalar<M>>(&self, f: F) -> Self {
        AlgebraElement { ring: Arc::clone(&self.ring), coords: self.coords.iter().map(f).collect() }
    }

    /// Move to another ring with the same basis, mapping coefficient monomials.
    pub fn transport<N: Monomial, F: Fn(&M) -> N>(&self, target: &Ring<N>, f: F) -> Result<AlgebraElement<N>> {
        if target.rank() != self.ring.rank() {
            return Err(Error::RingMismatch { left: self.ring.name().to_string(), right: target.name().to_string() });
        }
        let coords = self.coords.iter().map(|s| s.map_monomials(&f)).collect();
        AlgebraElement::from_coords(target, coords)
    }

    /// First nonzero coordinate in basis order (ascending degree).
    pub fn lowest_coordinate(&self) -> Option<(usize, &Scalar<M>)> {
        self.coords.iter().enumerate().find(|(_, c)| !c.is_zero())
    }

    /// Representative up to sign and Novikov monomial: the lowest-degree
    /// nonzero coordinate gets a positive leading coefficient on the trivial monomial.
    pub fn canonical_up_to_unit(&self) -> Self {
        let Some((_, lead)) = self.lowest_coordinate() else {
            return self.clone();
        };
        let (m, c) = lead.leading().expect("nonzero coordinate");
        let m_inv = m.inv();
        let sign = if c.is_negative() { -BigRational::one() } else { BigRational::one() };
        self.mul_monomial(&m_inv).scale(&Scalar::constant(sign))
    }

    /// As [`canonical_up_to_unit`](Self::canonical_up_to_unit), after
    /// clearing denominators and dividing out the integer content.
    pub fn primitive(&self) -> Self {
        let mut denom = BigInt::one();
        let mut content = BigInt::zero();
        for (_, _, c) in self.terms() {
            denom = denom.lcm(c.denom());
        }
        for (_, _, c) in self.terms() {
            let n = (c * BigRational::from_integer(denom.clone())).to_integer();
            content = content.gcd(&n);
        }
        if content.is_zero() {
            return self.clone();
        }
        let factor = BigRational::new(denom, content);
        self.scale(&Scalar::constant(factor)).canonical_up_to_unit()
    }

    /// Text form, e.g. `x2^2 + 1 * t^4` or `x1^2 - 2*x2`.
    pub fn render(&self, convention: Convention) -> String {
        let labels = self.ring.class_labels();
        let mut out = String::new();
        let unit = self.ring.unit_index();
        for (n, (i, m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let basis = &self.ring.basis()[i].label;
            let head = match (i == unit, abs.is_one()) {
                (true, _) => abs.to_string(),
                (false, true) => basis.clone(),
                (false, false) => format!("{}*{}", abs, basis),
            };
            out.push_str(&head);
            let mono = convention.apply(m);
            if !mono.is_one() {
                out.push_str(" * ");
                out.push_str(&mono.render(labels));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    pub fn to_report(&self, convention: Convention) -> ElementReport {
        let labels = self.ring.class_labels();
        ElementReport {
            ring: self.ring.name().to_string(),
            text: self.render(convention),
            terms: self
                .terms()
                .map(|(i, m, c)| TermReport {
                    basis: self.ring.basis()[i].label.clone(),
                    coefficient: c.to_string(),
                    monomial: {
                        let mono = convention.apply(m);
                        if mono.is_one() { "1".to_string() } else { mono.render(labels) }
                    },
                })
                .collect(),
        }
    }
}

impl AlgebraElement<NovikovMonomial> {
    /// `ν`: the largest t-exponent over all terms.
    pub fn valuation(&self) -> Result<Ratio<i64>> {
        self.terms().map(|(_, m, _)| m.t).max().ok_or(Error::ZeroElement)
    }

    /// Total degree of each term: `deg ξ − 2·q` in stored exponents.
    pub fn term_degrees(&self) -> Vec<i64> {
        self.terms().map(|(i, m, _)| self.ring.basis()[i].degree - 2 * m.q).collect()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TermReport {
    pub basis: String,
    pub coefficient: String,
    pub monomial: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ElementReport {
    pub ring: String,
    pub text: String,
    pub terms: Vec<TermReport>,
}

impl<M: Monomial> fmt::Display for AlgebraElement<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Convention::Display))
    }
}

// Operator forms panic on mismatched rings; the `checked_*` and `multiply`
// methods report the mismatch instead.
impl<M: Monomial> Add for &AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn add(self, rhs: &AlgebraElement<M>) -> AlgebraElement<M> {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl<M: Monomial> Sub for &AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn sub(self, rhs: &AlgebraElement<M>) -> AlgebraElement<M> {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl<M: Monomial> Mul for &AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn mul(self, rhs: &AlgebraElement<M>) -> AlgebraElement<M> {
        self.multiply(rhs).expect("ring mismatch in *")
    }
}

impl<M: Monomial> Neg for &AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn neg(self) -> AlgebraElement<M> {
        self.map_coeffs(|c| -c)
    }
}

impl<M: Monomial> Add for AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn add(self, rhs: AlgebraElement<M>) -> AlgebraElement<M> {
        &self + &rhs
    }
}

impl<M: Monomial> Sub for AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn sub(self, rhs: AlgebraElement<M>) -> AlgebraElement<M> {
        &self - &rhs
    }
}

impl<M: Monomial> Mul for AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn mul(self, rhs: AlgebraElement<M>) -> AlgebraElement<M> {
        &self * &rhs
    }
}

impl<M: Monomial> Neg for AlgebraElement<M> {
    type Output = AlgebraElement<M>;
    fn neg(self) -> AlgebraElement<M> {
        -&self
    }
}
