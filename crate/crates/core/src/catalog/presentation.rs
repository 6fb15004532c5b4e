//! Multiplication tables from weighted-homogeneous presentations.
//!
//! The Novikov symbols `e^{-A_i}` are treated as extra polynomial variables
//! of codegree `2c₁(A_i)`. Every variable then has positive codegree, each
//! graded piece of the polynomial ring is finite dimensional, and the normal
//! form of a monomial is found by solving one rational linear system in its
//! codegree.

use std::collections::HashMap;

use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

use crate::algebra::linalg::{self, QMatrix};
use crate::algebra::ring::{BasisClass, CoefficientMode, Relation, Ring, RingDescriptor, RingParts, RingStructure};
use crate::error::{Error, Result};
use crate::novikov::{EnrichedMonomial, EnrichedScalar, SphereClass};

/// `coeff · gens^a · e^b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyTerm {
    pub coeff: BigRational,
    pub gens: Vec<u32>,
    pub classes: Vec<u32>,
}

impl PolyTerm {
    pub fn new(coeff: BigRational, gens: Vec<u32>, classes: Vec<u32>) -> Self {
        PolyTerm { coeff, gens, classes }
    }
}

/// `head = rhs` in the quotient.
#[derive(Clone, Debug)]
pub struct PresentationRelation {
    pub head: Vec<u32>,
    pub rhs: Vec<PolyTerm>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub complex_dim: i64,
    /// `(name, homology degree)`.
    pub generators: Vec<(String, i64)>,
    pub classes: Vec<SphereClass>,
    pub relations: Vec<PresentationRelation>,
    /// Generator exponent vectors of the additive basis.
    pub basis: Vec<Vec<u32>>,
    pub kappa: Ratio<i64>,
    pub structure: RingStructure,
}

type Exps = Vec<u32>;

struct Graded<'a> {
    p: &'a Presentation,
    weights: Vec<i64>,
    /// Ideal generators `head − rhs` as sparse polynomials in all variables.
    ideal: Vec<(i64, Vec<(Exps, BigRational)>)>,
    cache: HashMap<i64, Piece>,
}

/// Linear algebra data for one codegree.
struct Piece {
    index: HashMap<Exps, usize>,
    /// Columns: ideal multiples first, then basis-times-symbol vectors.
    matrix: QMatrix,
    ideal_cols: usize,
    basis_cols: Vec<(usize, Exps)>,
}

fn monomials_of_weight(weights: &[i64], target: i64) -> Vec<Exps> {
    fn go(weights: &[i64], k: usize, left: i64, cur: &mut Exps, out: &mut Vec<Exps>) {
        if k == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e as i64 * weights[k] <= left {
            cur.push(e);
            go(weights, k + 1, left - e as i64 * weights[k], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    if target >= 0 {
        go(weights, 0, target, &mut Vec::new(), &mut out);
    }
    out
}

fn add_exps(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl<'a> Graded<'a> {
    fn new(p: &'a Presentation) -> Result<Self> {
        let top = 2 * p.complex_dim;
        let mut weights: Vec<i64> = p.generators.iter().map(|(_, d)| top - d).collect();
        weights.extend(p.classes.iter().map(|a| 2 * a.chern));
        if weights.iter().any(|&w| w <= 0) {
            return Err(Error::InvalidPresentation(format!("{}: every variable needs positive codegree", p.name)));
        }
        let g = p.generators.len();
        let mut ideal = Vec::new();
        for rel in &p.relations {
            let mut head = rel.head.clone();
            head.resize(g + p.classes.len(), 0);
            let w = weight(&weights, &head);
            let mut poly = vec![(head, BigRational::one())];
            for term in &rel.rhs {
                let mut e = term.gens.clone();
                e.resize(g, 0);
                let mut c = term.classes.clone();
                c.resize(p.classes.len(), 0);
                e.extend(c);
                if weight(&weights, &e) != w {
                    return Err(Error::InvalidPresentation(format!("{}: relation is not homogeneous", p.name)));
                }
                poly.push((e, -term.coeff.clone()));
            }
            ideal.push((w, poly));
        }
        Ok(Graded { p, weights, ideal, cache: HashMap::new() })
    }

    fn piece(&mut self, c: i64) -> Result<&Piece> {
        if !self.cache.contains_key(&c) {
            let piece = self.build_piece(c)?;
            self.cache.insert(c, piece);
        }
        Ok(&self.cache[&c])
    }

    fn build_piece(&self, c: i64) -> Result<Piece> {
        let g = self.p.generators.len();
        let monos = monomials_of_weight(&self.weights, c);
        let index: HashMap<Exps, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut cols: Vec<Vec<BigRational>> = Vec::new();
        for (w, poly) in &self.ideal {
            for m in monomials_of_weight(&self.weights, c - w) {
                let mut col = vec![BigRational::zero(); monos.len()];
                for (e, coeff) in poly {
                    col[index[&add_exps(e, &m)]] += coeff;
                }
                cols.push(col);
            }
        }
        let ideal_cols = cols.len();
        let class_weights = &self.weights[g..];
        let mut basis_cols = Vec::new();
        for (b, exps) in self.p.basis.iter().enumerate() {
            let mut be = exps.clone();
            be.resize(g, 0);
            let wb = weight(&self.weights[..g], &be);
            for k in monomials_of_weight(class_weights, c - wb) {
                let mut full = be.clone();
                full.extend(&k);
                let mut col = vec![BigRational::zero(); monos.len()];
                col[index[&full]] = BigRational::one();
                cols.push(col);
                basis_cols.push((b, k));
            }
        }
        let matrix: QMatrix = (0..monos.len()).map(|r| cols.iter().map(|col| col[r].clone()).collect()).collect();
        let ideal_rank = if ideal_cols == 0 {
            0
        } else {
            linalg::rank(&matrix.iter().map(|r| r[..ideal_cols].to_vec()).collect())
        };
        let full_rank = linalg::rank(&matrix);
        if full_rank != ideal_rank + basis_cols.len() {
            return Err(Error::InvalidPresentation(format!(
                "{}: basis is linearly dependent modulo the relations in codegree {}",
                self.p.name, c
            )));
        }
        if full_rank != monos.len() {
            return Err(Error::InvalidPresentation(format!(
                "{}: basis does not span the quotient in codegree {}",
                self.p.name, c
            )));
        }
        Ok(Piece { index, matrix, ideal_cols, basis_cols })
    }

    /// Basis expansion of the monomial `gens^exps`.
    fn normal_form(&mut self, exps: &[u32]) -> Result<EnrichedCoords> {
        let g = self.p.generators.len();
        let mut full = exps.to_vec();
        full.resize(g + self.p.classes.len(), 0);
        let c = weight(&self.weights, &full);
        let rank = self.p.basis.len();
        let piece = self.piece(c)?;
        let mut rhs = vec![BigRational::zero(); piece.matrix.len()];
        rhs[piece.index[&full]] = BigRational::one();
        let x = linalg::solve(&piece.matrix, &rhs)
            .ok_or_else(|| Error::InvalidPresentation(format!("cannot reduce monomial {:?}", exps)))?;
        let mut coords = vec![EnrichedScalar::zero(); rank];
        for (k, (b, e)) in piece.basis_cols.iter().enumerate() {
            let v = &x[piece.ideal_cols + k];
            if !v.is_zero() {
                let m = EnrichedMonomial::new(e.iter().map(|&v| v as i64).collect());
                coords[*b].add_term(m, v.clone());
            }
        }
        Ok(coords)
    }
}

type EnrichedCoords = Vec<EnrichedScalar>;

fn weight(weights: &[i64], exps: &[u32]) -> i64 {
    weights.iter().zip(exps).map(|(w, &e)| w * e as i64).sum()
}

/// Label of a generator monomial, e.g. `x1^2*x2`; the empty monomial is `1`.
pub fn monomial_label(names: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{}^{}", n, e) })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// Derive the full table and build the enriched ring.
pub fn build_enriched(p: &Presentation) -> Result<Ring<EnrichedMonomial>> {
    let mut graded = Graded::new(p)?;
    let g = p.generators.len();
    let top = 2 * p.complex_dim;
    let names: Vec<String> = p.generators.iter().map(|(n, _)| n.clone()).collect();
    let basis: Vec<BasisClass> = p
        .basis
        .iter()
        .map(|e| {
            let mut exps = e.clone();
            exps.resize(g, 0);
            let codeg: i64 = p.generators.iter().zip(&exps).map(|((_, d), &k)| (top - d) * k as i64).sum();
            BasisClass { label: monomial_label(&names, &exps), degree: top - codeg, exponents: exps }
        })
        .collect();
    if basis.iter().any(|b| b.degree < 0) {
        return Err(Error::InvalidPresentation(format!("{}: basis class of negative degree", p.name)));
    }
    let n = basis.len();
    let mut table = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in i..n {
            let coords = graded.normal_form(&add_exps(&basis[i].exponents, &basis[j].exponents))?;
            table[j][i] = coords.clone();
            table[i][j] = coords;
        }
    }
    let mut relations = Vec::new();
    for rel in &p.relations {
        let mut head = rel.head.clone();
        head.resize(g, 0);
        let replacement = graded.normal_form(&head)?;
        relations.push(Relation { head, replacement });
    }
    RingDescriptor::from_parts(RingParts {
        name: format!("{}@{}", p.name, CoefficientMode::Enriched.as_str()),
        mode: CoefficientMode::Enriched,
        complex_dim: p.complex_dim,
        generators: p.generators.clone(),
        basis,
        table,
        relations,
        sphere_classes: p.classes.clone(),
        kappa: p.kappa,
        structure: p.structure.clone(),
    })
}
