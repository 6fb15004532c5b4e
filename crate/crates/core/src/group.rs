//! Ordered free abelian groups, their integral group rings, and the
//! embedding of the integral quantum homology of a product of projective
//! spaces into such a group ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, CoefficientMode, Ring, RingStructure};
use crate::error::{Error, Result};
use crate::novikov::{EnrichedMonomial, Scalar};

/// `ℤ^rank` with a translation-invariant total order: compare the rational
/// weight vectors in turn, then fall back to lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedGroup {
    pub names: Vec<String>,
    #[serde(serialize_with = "ser_weights")]
    pub weights: Vec<Vec<Ratio<i64>>>,
}

fn ser_weights<S: serde::Serializer>(w: &[Vec<Ratio<i64>>], s: S) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = w.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
    v.serialize(s)
}

/// A group element as an exponent vector.
pub type GroupElement = Vec<i64>;

impl OrderedGroup {
    pub fn new(names: Vec<String>, weights: Vec<Vec<Ratio<i64>>>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| w.len() != names.len()) {
            return Err(Error::GroupMismatch(format!("weight vector of length {} on a rank {} group", w.len(), names.len())));
        }
        Ok(OrderedGroup { names, weights })
    }

    /// Plain lexicographic order.
    pub fn lex(names: Vec<String>) -> Self {
        OrderedGroup { names, weights: Vec::new() }
    }

    /// `ℤ` generated by `x` with `φ(x) = 1/(n+1)`.
    pub fn cpn(n: i64) -> Self {
        OrderedGroup { names: vec!["x".into()], weights: vec![vec![Ratio::new(1, n + 1)]] }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> GroupElement {
        vec![0; self.rank()]
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.identity();
        g[i] = 1;
        g
    }

    fn check(&self, g: &[i64]) -> Result<()> {
        if g.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("element of length {} in a rank {} group", g.len(), self.rank())))
        }
    }

    /// Values of the weight maps at `g`.
    pub fn weight(&self, g: &[i64]) -> Vec<Ratio<i64>> {
        self.weights.iter().map(|w| w.iter().zip(g).map(|(a, &b)| a * b).sum()).collect()
    }

    fn cmp_unchecked(&self, g: &[i64], h: &[i64]) -> Ordering {
        for w in &self.weights {
            let d: Ratio<i64> = w.iter().zip(g.iter().zip(h)).map(|(a, (&x, &y))| a * (x - y)).sum();
            match d.cmp(&Ratio::zero()) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        g.cmp(h)
    }

    pub fn compare(&self, g: &[i64], h: &[i64]) -> Result<Ordering> {
        self.check(g)?;
        self.check(h)?;
        Ok(self.cmp_unchecked(g, h))
    }

    pub fn render(&self, g: &[i64]) -> String {
        let parts: Vec<String> = self
            .names
            .iter()
            .zip(g)
            .filter(|(_, &e)| e != 0)
            .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{}^{}", n, e) })
            .collect();
        if parts.is_empty() { "1".into() } else { parts.join("*") }
    }
}

/// Finite `ℤ`-combination of group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    rank: usize,
    terms: BTreeMap<GroupElement, i64>,
}

impl GroupRingElement {
    pub fn zero(rank: usize) -> Self {
        GroupRingElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(vec![0; rank], 1)
    }

    pub fn monomial(g: GroupElement, c: i64) -> Self {
        let mut e = Self::zero(g.len());
        e.add_term(g, c);
        e
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (GroupElement, i64)>) -> Self {
        let mut e = Self::zero(rank);
        for (g, c) in terms {
            assert_eq!(g.len(), rank, "group element of wrong length");
            e.add_term(g, c);
        }
        e
    }

    pub fn add_term(&mut self, g: GroupElement, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(g).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &i64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&vec![0; self.rank]) == Some(&1)
    }

    /// `±g` for a single group element `g`.
    pub fn as_signed_monomial(&self) -> Option<(&GroupElement, i64)> {
        match self.terms.iter().next() {
            Some((g, &c)) if self.terms.len() == 1 && c.abs() == 1 => Some((g, c)),
            _ => None,
        }
    }

    /// Least and greatest support elements under the group order.
    pub fn extremes(&self, group: &OrderedGroup) -> Option<(&GroupElement, &GroupElement)> {
        let min = self.terms.keys().min_by(|a, b| group.cmp_unchecked(a, b))?;
        let max = self.terms.keys().max_by(|a, b| group.cmp_unchecked(a, b))?;
        Some((min, max))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rank);
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                let gh: GroupElement = g.iter().zip(h).map(|(x, y)| x + y).collect();
                out.add_term(gh, a * b);
            }
        }
        out
    }

    pub fn render(&self, group: &OrderedGroup) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&GroupElement> = self.terms.keys().collect();
        keys.sort_by(|a, b| group.cmp_unchecked(a, b));
        let mut out = String::new();
        for (n, g) in keys.into_iter().enumerate() {
            let c = self.terms[g];
            if n == 0 {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            let body = group.render(g);
            match (c.abs(), body.as_str()) {
                (1, _) => out.push_str(&body),
                (a, "1") => out.push_str(&a.to_string()),
                (a, _) => out.push_str(&format!("{}*{}", a, body)),
            }
        }
        out
    }
}

/// Convolution product in `ℤ[G]`.
pub fn gr_multiply(p: &GroupRingElement, r: &GroupRingElement, group: &OrderedGroup) -> Result<GroupRingElement> {
    for x in [p, r] {
        if x.rank != group.rank() {
            return Err(Error::GroupMismatch(format!("element of rank {} in a rank {} group", x.rank, group.rank())));
        }
    }
    Ok(p.mul_unchecked(r))
}

/// Search box for [`classify_gr_units`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSearchBounds {
    pub support: usize,
    pub coeff: i64,
    pub exponent: i64,
}

impl Default for GroupSearchBounds {
    fn default() -> Self {
        GroupSearchBounds { support: 3, coeff: 2, exponent: 4 }
    }
}

impl GroupSearchBounds {
    fn admits(&self, e: &GroupRingElement) -> bool {
        e.len() <= self.support
            && e.terms.iter().all(|(g, c)| c.abs() <= self.coeff && g.iter().all(|x| x.abs() <= self.exponent))
    }
}

/// A unit found by the search, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupUnit {
    pub unit: GroupRingElement,
    pub inverse: GroupRingElement,
}

#[derive(Clone, Debug)]
pub struct GroupUnitReport {
    pub group: OrderedGroup,
    pub bounds: GroupSearchBounds,
    pub examined: u64,
    pub units: Vec<GroupUnit>,
    /// Every unit found is `±g`.
    pub only_signed_monomials: bool,
}

#[derive(Serialize)]
pub struct GroupUnitSummary {
    pub group: OrderedGroup,
    pub bounds: GroupSearchBounds,
    pub examined: u64,
    pub unit_count: usize,
    pub only_signed_monomials: bool,
    /// `(sign, exponent vector)` per unit.
    pub units: Vec<(i64, GroupElement)>,
    pub non_monomial: Vec<String>,
}

impl GroupUnitReport {
    pub fn summary(&self) -> GroupUnitSummary {
        let mut units = Vec::new();
        let mut non_monomial = Vec::new();
        for u in &self.units {
            match u.unit.as_signed_monomial() {
                Some((g, s)) => units.push((s, g.clone())),
                None => non_monomial.push(u.unit.render(&self.group)),
            }
        }
        GroupUnitSummary {
            group: self.group.clone(),
            bounds: self.bounds,
            examined: self.examined,
            unit_count: self.units.len(),
            only_signed_monomials: self.only_signed_monomials,
            units,
            non_monomial,
        }
    }
}

/// The inverse of `p` if it lies inside `bounds`. Long division from the
/// lexicographically least term: every term produced belongs to the unique
/// inverse, so leaving the box proves there is no bounded inverse.
pub fn bounded_inverse(p: &GroupRingElement, bounds: &GroupSearchBounds) -> Option<GroupRingElement> {
    let (g0, &c0) = p.terms.iter().next()?;
    if c0.abs() != 1 {
        return None;
    }
    let rank = p.rank;
    let mut inv = GroupRingElement::zero(rank);
    let mut rem = GroupRingElement::one(rank);
    while let Some((h, &c)) = rem.terms.iter().next() {
        if c % c0 != 0 {
            return None;
        }
        let g: GroupElement = h.iter().zip(g0).map(|(a, b)| a - b).collect();
        let k = c / c0;
        if k.abs() > bounds.coeff || g.iter().any(|x| x.abs() > bounds.exponent) {
            return None;
        }
        inv.add_term(g.clone(), k);
        if inv.len() > bounds.support {
            return None;
        }
        let step = p.mul_unchecked(&GroupRingElement::monomial(g, k));
        for (x, v) in step.terms {
            rem.add_term(x, -v);
        }
    }
    Some(inv)
}

fn box_points(rank: usize, e: i64) -> Vec<GroupElement> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: GroupElement| {
                (-e..=e).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn combinations(n: usize, k: usize, first: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![first];
    go(n, k, first + 1, &mut cur, &mut out);
    out
}

/// Exhaustive search for units of `ℤ[G]` with at most `support` terms,
/// coefficients in `[−coeff, coeff]` and exponents in `[−exponent, exponent]`,
/// whose inverse satisfies the same bounds. Each hit is re-verified by
/// multiplication.
pub fn classify_gr_units(group: &OrderedGroup, bounds: GroupSearchBounds) -> GroupUnitReport {
    let points = box_points(group.rank(), bounds.exponent.max(0));
    let coeffs: Vec<i64> = (-bounds.coeff..=bounds.coeff).filter(|&c| c != 0).collect();
    let rank = group.rank();
    let mut results: Vec<(u64, Vec<GroupUnit>)> = (0..points.len())
        .into_par_iter()
        .map(|first| {
            let mut examined = 0u64;
            let mut found = Vec::new();
            for k in 1..=bounds.support.min(points.len() - first) {
                for combo in combinations(points.len(), k, first) {
                    let mut idx = vec![0usize; k];
                    'coeffs: loop {
                        examined += 1;
                        let p = GroupRingElement::from_terms(
                            rank,
                            combo.iter().zip(&idx).map(|(&pi, &ci)| (points[pi].clone(), coeffs[ci])),
                        );
                        if let Some(inv) = bounded_inverse(&p, &bounds) {
                            if bounds.admits(&inv) && p.mul_unchecked(&inv).is_one() {
                                found.push(GroupUnit { unit: p, inverse: inv });
                            }
                        }
                        for slot in idx.iter_mut() {
                            *slot += 1;
                            if *slot < coeffs.len() {
                                continue 'coeffs;
                            }
                            *slot = 0;
                        }
                        break;
                    }
                }
            }
            (examined, found)
        })
        .collect();
    let examined = results.iter().map(|(e, _)| e).sum();
    let mut units: Vec<GroupUnit> = results.drain(..).flat_map(|(_, u)| u).collect();
    units.sort_by(|a, b| a.unit.cmp(&b.unit));
    let only_signed_monomials = units.iter().all(|u| u.unit.as_signed_monomial().is_some());
    GroupUnitReport { group: group.clone(), bounds, examined, units, only_signed_monomials }
}

/// `Q_enr(CP^{n₁} × ⋯ × CP^{n_k}) ≅ ℤ[ℤ^k]`: the monomial `x_i^a (e^{-L_i})^c`
/// goes to `(a + (n_i+1)c)·ε_i`, ordered by `ε_i ↦ 1/(n_i+1)`
/// lexicographically over the factors.
#[derive(Clone, Debug)]
pub struct QenrEmbedding {
    pub ring: Ring<EnrichedMonomial>,
    pub group: OrderedGroup,
    pub dims: Vec<i64>,
}

pub fn embed_product_qenr(ring: &Ring<EnrichedMonomial>) -> Result<QenrEmbedding> {
    let RingStructure::ProjectiveProduct { dims } = ring.structure() else {
        return Err(Error::NotAProductOfProjectiveSpaces(ring.name().to_string()));
    };
    if ring.mode() != CoefficientMode::Enriched
        || ring.generators().len() != dims.len()
        || ring.sphere_classes().len() != dims.len()
    {
        return Err(Error::NotAProductOfProjectiveSpaces(ring.name().to_string()));
    }
    let dims: Vec<i64> = dims.iter().map(|&d| d as i64).collect();
    let names = ring.generators().iter().map(|g| g.name.clone()).collect();
    let k = dims.len();
    let weights = (0..k)
        .map(|i| (0..k).map(|j| if i == j { Ratio::new(1, dims[i] + 1) } else { Ratio::zero() }).collect())
        .collect();
    Ok(QenrEmbedding { ring: ring.clone(), group: OrderedGroup::new(names, weights)?, dims })
}

impl QenrEmbedding {
    /// Group element of the Novikov symbol `e^{-L_i}`, i.e. `x_i^{n_i+1}`.
    pub fn class_element(&self, i: usize) -> GroupElement {
        let mut g = self.group.identity();
        g[i] = self.dims[i] + 1;
        g
    }

    /// Group element of `q_i = e^{L_i}`: the relation `x^{n+1} = q^{-1}`.
    pub fn q_element(&self, i: usize) -> GroupElement {
        self.class_element(i).into_iter().map(|x| -x).collect()
    }

    pub fn embed(&self, a: &AlgebraElement<EnrichedMonomial>) -> Result<GroupRingElement> {
        if a.ring().name() != self.ring.name() {
            return Err(Error::RingMismatch { left: a.ring().name().into(), right: self.ring.name().into() });
        }
        let mut out = GroupRingElement::zero(self.dims.len());
        for (i, m, c) in a.terms() {
            if !c.is_integer() {
                return Err(Error::NotIntegral(a.to_string()));
            }
            let c = c.to_integer().to_i64().ok_or_else(|| Error::NotIntegral(a.to_string()))?;
            let exps = &self.ring.basis()[i].exponents;
            let g: GroupElement =
                (0..self.dims.len()).map(|f| exps[f] as i64 + (self.dims[f] + 1) * m.exponent(f)).collect();
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn pullback(&self, p: &GroupRingElement) -> Result<AlgebraElement<EnrichedMonomial>> {
        if p.rank() != self.dims.len() {
            return Err(Error::GroupMismatch(format!("rank {} element for a rank {} group", p.rank(), self.dims.len())));
        }
        let mut coords = vec![Scalar::zero(); self.ring.rank()];
        for (g, &c) in p.terms() {
            let exps: Vec<u32> = g.iter().zip(&self.dims).map(|(&x, &n)| x.rem_euclid(n + 1) as u32).collect();
            let classes: Vec<i64> = g.iter().zip(&self.dims).map(|(&x, &n)| x.div_euclid(n + 1)).collect();
            let b = self
                .ring
                .basis()
                .iter()
                .position(|b| b.exponents == exps)
                .expect("product basis contains every reduced monomial");
            coords[b].add_term(EnrichedMonomial::new(classes), num_rational::BigRational::from_integer(c.into()));
        }
        AlgebraElement::from_coords(&self.ring, coords)
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = (0..self.rank).map(|i| format!("g{}", i + 1)).collect();
        f.write_str(&self.render(&OrderedGroup::lex(names)))
    }
}

#[cfg(test)]
mod tests;
