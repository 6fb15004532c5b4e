use std::sync::Arc;

use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{self, QMatrix};
use crate::error::{Error, Result};
use crate::novikov::{EnrichedMonomial, Monomial, NovikovMonomial, Scalar, SphereClass};

/// Which Novikov ring the coefficients live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientMode {
    /// Symbols `e^{-A}` indexed by sphere classes.
    Enriched,
    /// `q^a t^b`.
    Universal,
    /// `t^b` only: the image of the degree-2N part under q-stripping.
    Lambda,
}

impl CoefficientMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoefficientMode::Enriched => "enriched",
            CoefficientMode::Universal => "universal",
            CoefficientMode::Lambda => "lambda",
        }
    }
}

/// Which geometric family a ring models; selects the completeness arguments
/// available to the unit classifiers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum RingStructure {
    /// `CP^{n_1} × ⋯ × CP^{n_k}` with the monotone form.
    ProjectiveProduct { dims: Vec<u32> },
    /// The Grassmannian of 2-planes in C⁴.
    Grassmannian24,
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
    pub basis_index: usize,
}

/// A basis class of `H_ev(X)`, written as a monomial in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisClass {
    pub label: String,
    pub degree: i64,
    pub exponents: Vec<u32>,
}

/// A generator monomial together with its basis expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation<M: Monomial> {
    pub head: Vec<u32>,
    pub replacement: Vec<Scalar<M>>,
}

/// Raw material for a [`RingDescriptor`]. The basis may come in any order;
/// construction sorts it by ascending degree, keeping input order on ties.
#[derive(Clone, Debug)]
pub struct RingParts<M: Monomial> {
    pub name: String,
    pub mode: CoefficientMode,
    pub complex_dim: i64,
    pub generators: Vec<(String, i64)>,
    pub basis: Vec<BasisClass>,
    pub table: Vec<Vec<Vec<Scalar<M>>>>,
    pub relations: Vec<Relation<M>>,
    pub sphere_classes: Vec<SphereClass>,
    pub kappa: Ratio<i64>,
    pub structure: RingStructure,
}

/// A finite-rank commutative algebra over Novikov scalars with its full
/// table of structure constants.
#[derive(Debug)]
pub struct RingDescriptor<M: Monomial> {
    name: String,
    mode: CoefficientMode,
    complex_dim: i64,
    generators: Vec<Generator>,
    basis: Vec<BasisClass>,
    table: Vec<Vec<Vec<Scalar<M>>>>,
    relations: Vec<Relation<M>>,
    pairing: QMatrix,
    sphere_classes: Vec<SphereClass>,
    labels: Vec<String>,
    kappa: Ratio<i64>,
    min_chern: i64,
    structure: RingStructure,
    unit_index: usize,
    point_index: usize,
}

pub type Ring<M> = Arc<RingDescriptor<M>>;

/// Result of the structural self-check.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StructureReport {
    pub associative: bool,
    pub commutative: bool,
    pub identity: bool,
    pub degree_additive: bool,
    pub failures: Vec<String>,
}

impl StructureReport {
    pub fn ok(&self) -> bool {
        self.associative && self.commutative && self.identity && self.degree_additive
    }
}

impl<M: Monomial> RingDescriptor<M> {
    pub fn from_parts(parts: RingParts<M>) -> Result<Ring<M>> {
        let n = parts.basis.len();
        if parts.table.len() != n || parts.table.iter().any(|r| r.len() != n || r.iter().any(|e| e.len() != n)) {
            return Err(Error::InvalidPresentation(format!("{}: table shape does not match basis", parts.name)));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| parts.basis[i].degree);
        let permute = |coords: &Vec<Scalar<M>>| -> Vec<Scalar<M>> { order.iter().map(|&old| coords[old].clone()).collect() };
        let basis: Vec<BasisClass> = order.iter().map(|&i| parts.basis[i].clone()).collect();
        let table: Vec<Vec<Vec<Scalar<M>>>> =
            order.iter().map(|&i| order.iter().map(|&j| permute(&parts.table[i][j])).collect()).collect();
        let relations = parts
            .relations
            .iter()
            .map(|r| Relation { head: r.head.clone(), replacement: permute(&r.replacement) })
            .collect();

        let top = 2 * parts.complex_dim;
        let unit_index = basis
            .iter()
            .position(|b| b.exponents.iter().all(|&e| e == 0))
            .ok_or_else(|| Error::InvalidPresentation("no unit class".into()))?;
        if basis[unit_index].degree != top {
            return Err(Error::InvalidPresentation("unit class must have degree 2N".into()));
        }
        let point_index = basis
            .iter()
            .position(|b| b.degree == 0)
            .ok_or_else(|| Error::InvalidPresentation("no point class".into()))?;

        let mut generators = Vec::new();
        for (g, (name, degree)) in parts.generators.iter().enumerate() {
            let basis_index = basis
                .iter()
                .position(|b| b.exponents.iter().enumerate().all(|(k, &e)| e == u32::from(k == g)))
                .ok_or_else(|| Error::InvalidPresentation(format!("generator {} is not a basis class", name)))?;
            generators.push(Generator { name: name.clone(), degree: *degree, basis_index });
        }

        let pairing = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if basis[i].degree + basis[j].degree == top {
                            table[i][j][point_index].coefficient(&M::one())
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();

        let min_chern = parts.sphere_classes.iter().fold(0i64, |g, a| g.gcd(&a.chern));
        let labels = parts.sphere_classes.iter().map(|a| a.label.clone()).collect();
        Ok(Arc::new(RingDescriptor {
            name: parts.name,
            mode: parts.mode,
            complex_dim: parts.complex_dim,
            generators,
            basis,
            table,
            relations,
            pairing,
            sphere_classes: parts.sphere_classes,
            labels,
            kappa: parts.kappa,
            min_chern,
            structure: parts.structure,
            unit_index,
            point_index,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn mode(&self) -> CoefficientMode {
        self.mode
    }

    /// Complex dimension `N`.
    pub fn complex_dim(&self) -> i64 {
        self.complex_dim
    }

    /// Rank of `H_ev(X)`.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisClass] {
        &self.basis
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Relation<M>] {
        &self.relations
    }

    /// Basis expansion of `ξ_i * ξ_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Scalar<M>] {
        &self.table[i][j]
    }

    /// Classical intersection numbers `ξ_i · ξ_j`.
    pub fn pairing(&self) -> &QMatrix {
        &self.pairing
    }

    pub fn sphere_classes(&self) -> &[SphereClass] {
        &self.sphere_classes
    }

    pub fn class_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn kappa(&self) -> Ratio<i64> {
        self.kappa
    }

    /// Minimal Chern number: the positive generator of `c₁(H_2^S)`.
    pub fn min_chern(&self) -> i64 {
        self.min_chern
    }

    /// The stored class of smallest Chern number.
    pub fn line_class(&self) -> Option<&SphereClass> {
        self.sphere_classes.iter().min_by_key(|a| a.chern)
    }

    pub fn structure(&self) -> &RingStructure {
        &self.structure
    }

    pub fn unit_index(&self) -> usize {
        self.unit_index
    }

    pub fn point_index(&self) -> usize {
        self.point_index
    }

    pub fn codegree(&self, i: usize) -> i64 {
        2 * self.complex_dim - self.basis[i].degree
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn generator(&self, name: &str) -> Option<&Generator> {
        self.generators.iter().find(|g| g.name == name)
    }

    /// Chern number carried by a coefficient monomial of this ring.
    pub fn monomial_chern(&self, m: &M) -> Ratio<i64> {
        m.chern_number(&self.sphere_classes, self.kappa, self.mode == CoefficientMode::Lambda)
    }

    /// Symbols accepted by the expression parser for pure coefficients.
    pub fn scalar_symbol(&self, name: &str) -> Option<M>
    where
        M: ScalarSymbols,
    {
        M::lookup(self, name)
    }

    /// Rebuild with coefficients pushed through a monomial map.
    pub fn map_coefficients<N: Monomial, F: Fn(&M) -> N>(&self, name: String, mode: CoefficientMode, f: F) -> Ring<N> {
        let map = |coords: &Vec<Scalar<M>>| -> Vec<Scalar<N>> { coords.iter().map(|s| s.map_monomials(&f)).collect() };
        Arc::new(RingDescriptor {
            name,
            mode,
            complex_dim: self.complex_dim,
            generators: self.generators.clone(),
            basis: self.basis.clone(),
            table: self.table.iter().map(|row| row.iter().map(map).collect()).collect(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation { head: r.head.clone(), replacement: map(&r.replacement) })
                .collect(),
            pairing: self.pairing.clone(),
            sphere_classes: self.sphere_classes.clone(),
            labels: self.labels.clone(),
            kappa: self.kappa,
            min_chern: self.min_chern,
            structure: self.structure.clone(),
            unit_index: self.unit_index,
            point_index: self.point_index,
        })
    }

    /// Dual basis vector `ξ_i^*` with `ξ_j · ξ_i^* = δ_ij`, as rational coordinates.
    pub fn intersection_dual(&self, i: usize) -> Result<Vec<BigRational>> {
        let inv = linalg::inverse(&self.pairing).ok_or(Error::DegeneratePairing)?;
        Ok(inv.iter().map(|row| row[i].clone()).collect())
    }

    /// Check associativity over all basis triples, commutativity, the unit
    /// law and degree additivity of every table entry.
    pub fn check_structure(&self) -> StructureReport {
        let n = self.rank();
        let mut rep = StructureReport { associative: true, commutative: true, identity: true, degree_additive: true, failures: vec![] };
        let mul_vec = |i: usize, v: &[Scalar<M>]| -> Vec<Scalar<M>> {
            let mut out = vec![Scalar::zero(); n];
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, s) in self.table[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = &out[k] + &(c * s);
                    }
                }
            }
            out
        };
        let top = 2 * self.complex_dim;
        for i in 0..n {
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    rep.commutative = false;
                    rep.failures.push(format!("{} * {} is not commutative", self.basis[i].label, self.basis[j].label));
                }
                for (k, s) in self.table[i][j].iter().enumerate() {
                    for (m, _) in s.terms() {
                        let expected = Ratio::from_integer(self.basis[i].degree + self.basis[j].degree - top)
                            + self.monomial_chern(m) * Ratio::from_integer(2);
                        if expected != Ratio::from_integer(self.basis[k].degree) {
                            rep.degree_additive = false;
                            rep.failures.push(format!(
                                "{} * {} has a term on {} of the wrong degree",
                                self.basis[i].label, self.basis[j].label, self.basis[k].label
                            ));
                        }
                    }
                }
                for k in 0..n {
                    let left = {
                        let ij = &self.table[i][j];
                        let mut out = vec![Scalar::zero(); n];
                        for (l, c) in ij.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for (r, s) in self.table[l][k].iter().enumerate() {
                                if !s.is_zero() {
                                    out[r] = &out[r] + &(c * s);
                                }
                            }
                        }
                        out
                    };
                    let right = mul_vec(i, &self.table[j][k]);
                    if left != right {
                        rep.associative = false;
                        rep.failures.push(format!(
                            "({} * {}) * {} differs from {} * ({} * {})",
                            self.basis[i].label, self.basis[j].label, self.basis[k].label,
                            self.basis[i].label, self.basis[j].label, self.basis[k].label
                        ));
                    }
                }
            }
            let e: Vec<Scalar<M>> = (0..n).map(|k| if k == i { Scalar::one() } else { Scalar::zero() }).collect();
            if self.table[self.unit_index][i] != e {
                rep.identity = false;
                rep.failures.push(format!("unit does not fix {}", self.basis[i].label));
            }
        }
        rep
    }
}

impl RingDescriptor<NovikovMonomial> {
    /// The q-stripped companion: `ψ` applied to the whole table.
    pub fn lambda_companion(&self) -> Ring<NovikovMonomial> {
        let base = self.name.split('@').next().unwrap_or(&self.name).to_string();
        self.map_coefficients(format!("{}@lambda", base), CoefficientMode::Lambda, |m| NovikovMonomial::t_only(m.t))
    }
}

/// Coefficient symbols the expression grammar understands for a monomial type.
pub trait ScalarSymbols: Monomial {
    fn lookup(ring: &RingDescriptor<Self>, name: &str) -> Option<Self>;
    fn symbol_names(ring: &RingDescriptor<Self>) -> Vec<String>;
}

impl ScalarSymbols for NovikovMonomial {
    fn lookup(ring: &RingDescriptor<Self>, name: &str) -> Option<Self> {
        match (name, ring.mode) {
            ("t", _) => Some(NovikovMonomial::t_only(Ratio::one())),
            ("q", CoefficientMode::Universal) => Some(NovikovMonomial::new(1, Ratio::zero())),
            _ => None,
        }
    }

    fn symbol_names(ring: &RingDescriptor<Self>) -> Vec<String> {
        match ring.mode {
            CoefficientMode::Universal => vec!["q".into(), "t".into()],
            _ => vec!["t".into()],
        }
    }
}

impl ScalarSymbols for EnrichedMonomial {
    fn lookup(ring: &RingDescriptor<Self>, name: &str) -> Option<Self> {
        let label = name.strip_prefix("e_")?;
        ring.labels.iter().position(|l| l == label).map(EnrichedMonomial::class)
    }

    fn symbol_names(ring: &RingDescriptor<Self>) -> Vec<String> {
        ring.labels.iter().map(|l| format!("e_{}", l)).collect()
    }
}
