//! The divisor subring, a canonical complement, and Property-𝒟
//! certificates from the genus-zero dimension formula.

use num_integer::Integer;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::linalg::{self, QMatrix};
use crate::algebra::{AlgebraElement, Ring};
use crate::error::Result;
use crate::novikov::{Monomial, NovikovMonomial, Scalar};
use crate::seidel::{finite_order_verdict, Completeness};

/// A homogeneous class with rational coordinates in the ring basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousClass {
    pub degree: i64,
    pub coords: Vec<BigRational>,
}

impl HomogeneousClass {
    pub fn element<M: Monomial>(&self, ring: &Ring<M>) -> AlgebraElement<M> {
        let coords = self.coords.iter().cloned().map(Scalar::constant).collect();
        AlgebraElement::from_coords(ring, coords).expect("coordinates match the basis")
    }

    fn is_unit_class(&self, unit: usize) -> bool {
        self.coords.iter().enumerate().all(|(i, c)| if i == unit { !c.is_zero() } else { c.is_zero() })
    }
}

/// Product using only the classical (trivial monomial) part of the table.
pub fn classical_product<M: Monomial>(ring: &Ring<M>, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = ring.rank();
    let one = M::one();
    let mut out = vec![BigRational::zero(); n];
    for i in (0..n).filter(|&i| !a[i].is_zero()) {
        for j in (0..n).filter(|&j| !b[j].is_zero()) {
            let ab = &a[i] * &b[j];
            for (k, s) in ring.product(i, j).iter().enumerate() {
                let c = s.coefficient(&one);
                if !c.is_zero() {
                    out[k] += &ab * c;
                }
            }
        }
    }
    out
}

fn primitive(v: &[BigRational]) -> Vec<BigRational> {
    let denom = v.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return v.to_vec();
    }
    let lead_negative = ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    let content = if lead_negative { -content } else { content };
    ints.into_iter().map(|c| BigRational::from_integer(c / &content)).collect()
}

fn degree_of<M: Monomial>(ring: &Ring<M>, v: &[BigRational]) -> Option<i64> {
    v.iter().position(|c| !c.is_zero()).map(|i| ring.basis()[i].degree)
}

/// `(basis indices of degree d, span of vectors restricted to them)`.
struct Piece {
    indices: Vec<usize>,
    rows: QMatrix,
}

impl Piece {
    fn restrict(&self, v: &[BigRational]) -> Vec<BigRational> {
        self.indices.iter().map(|&i| v[i].clone()).collect()
    }

    fn contains(&self, v: &[BigRational]) -> bool {
        let mut m = self.rows.clone();
        let r = linalg::rank(&m);
        m.push(self.restrict(v));
        linalg::rank(&m) == r
    }

    fn rref_rows(&self) -> QMatrix {
        if self.rows.is_empty() {
            return Vec::new();
        }
        let (r, pivots) = linalg::rref(self.rows.clone());
        r.into_iter().take(pivots.len()).collect()
    }
}

fn pieces<M: Monomial>(ring: &Ring<M>) -> Vec<(i64, Piece)> {
    let mut degrees: Vec<i64> = ring.basis().iter().map(|b| b.degree).collect();
    degrees.dedup();
    degrees
        .into_iter()
        .map(|d| {
            let indices = (0..ring.rank()).filter(|&i| ring.basis()[i].degree == d).collect();
            (d, Piece { indices, rows: Vec::new() })
        })
        .collect()
}

fn expand(piece: &Piece, row: &[BigRational], rank: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); rank];
    for (k, &i) in piece.indices.iter().enumerate() {
        v[i] = row[k].clone();
    }
    v
}

/// `𝒟`: the span of `𝟙` and all classical products of degree-(2N−2)
/// classes. Returned degree by degree (ascending), each piece in reduced
/// echelon form scaled to primitive integers.
pub fn divisor_subring<M: Monomial>(ring: &Ring<M>) -> Vec<HomogeneousClass> {
    let n = ring.rank();
    let divisor_degree = 2 * ring.complex_dim() - 2;
    let unit = {
        let mut v = vec![BigRational::zero(); n];
        v[ring.unit_index()] = BigRational::one();
        v
    };
    let divisors: Vec<Vec<BigRational>> = (0..n)
        .filter(|&i| ring.basis()[i].degree == divisor_degree)
        .map(|i| {
            let mut v = vec![BigRational::zero(); n];
            v[i] = BigRational::one();
            v
        })
        .collect();
    let mut ps = pieces(ring);
    let mut queue = vec![unit];
    while let Some(w) = queue.pop() {
        let Some(d) = degree_of(ring, &w) else { continue };
        let (_, piece) = ps.iter_mut().find(|(deg, _)| *deg == d).expect("degree present in basis");
        if piece.contains(&w) {
            continue;
        }
        piece.rows.push(piece.restrict(&w));
        for x in &divisors {
            let p = classical_product(ring, &w, x);
            if p.iter().any(|c| !c.is_zero()) {
                queue.push(p);
            }
        }
    }
    ps.iter()
        .flat_map(|(d, piece)| {
            piece
                .rref_rows()
                .into_iter()
                .map(|row| HomogeneousClass { degree: *d, coords: primitive(&expand(piece, &row, n)) })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// `𝒟` is closed under the classical product.
pub fn is_closed<M: Monomial>(ring: &Ring<M>, d: &[HomogeneousClass]) -> bool {
    let mut ps = pieces(ring);
    for c in d {
        let (_, p) = ps.iter_mut().find(|(deg, _)| *deg == c.degree).expect("degree present");
        p.rows.push(p.restrict(&c.coords));
    }
    d.iter().all(|a| {
        d.iter().all(|b| {
            let p = classical_product(ring, &a.coords, &b.coords);
            match degree_of(ring, &p) {
                None => true,
                Some(deg) => ps.iter().find(|(x, _)| *x == deg).is_some_and(|(_, piece)| piece.contains(&p)),
            }
        })
    })
}

/// `𝒱`: in each degree `d`, the pairing-annihilator of `𝒟_{2N−d}` when it
/// complements `𝒟_d`; otherwise the basis classes off the echelon pivots.
pub fn choose_complement<M: Monomial>(ring: &Ring<M>, d: &[HomogeneousClass]) -> Vec<HomogeneousClass> {
    let n = ring.rank();
    let top = 2 * ring.complex_dim();
    let pairing = ring.pairing();
    let mut out = Vec::new();
    for (deg, piece) in pieces(ring) {
        let here: QMatrix = d.iter().filter(|c| c.degree == deg).map(|c| piece.restrict(&c.coords)).collect();
        let missing = piece.indices.len() - here.len();
        if missing == 0 {
            continue;
        }
        let dual: Vec<&HomogeneousClass> = d.iter().filter(|c| c.degree == top - deg).collect();
        let conditions: QMatrix = dual
            .iter()
            .map(|w| {
                piece
                    .indices
                    .iter()
                    .map(|&i| (0..n).map(|j| &pairing[i][j] * &w.coords[j]).sum::<BigRational>())
                    .collect()
            })
            .collect();
        let annihilator = if conditions.is_empty() {
            (0..piece.indices.len())
                .map(|k| (0..piece.indices.len()).map(|j| BigRational::from_integer(i64::from(j == k).into())).collect())
                .collect()
        } else {
            linalg::nullspace(&conditions, piece.indices.len())
        };
        let mut combined = here.clone();
        combined.extend(annihilator.iter().cloned());
        let chosen: Vec<Vec<BigRational>> = if annihilator.len() == missing && linalg::rank(&combined) == piece.indices.len() {
            annihilator
        } else {
            let pivots = if here.is_empty() { Vec::new() } else { linalg::rref(here.clone()).1 };
            (0..piece.indices.len())
                .filter(|k| !pivots.contains(k))
                .map(|k| (0..piece.indices.len()).map(|j| BigRational::from_integer(i64::from(j == k).into())).collect())
                .collect()
        };
        out.extend(chosen.into_iter().map(|row| HomogeneousClass { degree: deg, coords: primitive(&expand(&piece, &row, n)) }));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PropertyDStatus {
    HoldsCertificate,
    HoldsTrivially,
    Inconclusive,
}

impl PropertyDStatus {
    pub fn holds(self) -> bool {
        !matches!(self, PropertyDStatus::Inconclusive)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyDStatus::HoldsCertificate => "holds-certificate",
            PropertyDStatus::HoldsTrivially => "holds-trivially",
            PropertyDStatus::Inconclusive => "inconclusive",
        }
    }
}

/// One `(d, v, β)` check of `codeg d + codeg v = 2N + 2c₁(β) − 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvidenceLine {
    pub d: String,
    pub v: String,
    pub beta_chern: i64,
    pub codeg_d: i64,
    pub codeg_v: i64,
    pub required_sum: i64,
    /// `2N + 2c₁(β) − 2 − codeg v`.
    pub required_codeg_d: i64,
    pub feasible: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropertyDReport {
    pub ring: String,
    pub complex_dim: i64,
    pub divisor_basis: Vec<String>,
    pub complement_basis: Vec<String>,
    pub status: PropertyDStatus,
    /// Chern numbers `c₁(β)` examined, `0 < c₁(β) ≤ 4N`.
    pub beta_cherns: Vec<i64>,
    pub horizon: String,
    pub evidence: Vec<EvidenceLine>,
    pub feasible: Vec<EvidenceLine>,
    /// Smallest codegree `d` would need, over all `(v, β)`.
    pub min_required_codeg_d: Option<i64>,
    /// Largest codegree of a class in `𝒟 \ {𝟙}`.
    pub max_codeg_d: Option<i64>,
    pub min_required_sum: Option<i64>,
    pub max_achievable_sum: Option<i64>,
    pub summary: String,
}

/// Chern numbers of nonnegative combinations of the stored classes in `(0, limit]`.
pub fn effective_cherns<M: Monomial>(ring: &Ring<M>, limit: i64) -> Vec<i64> {
    let gens: Vec<i64> = ring.sphere_classes().iter().map(|a| a.chern).filter(|&c| c > 0).collect();
    let mut reach = vec![false; limit.max(0) as usize + 1];
    reach[0] = true;
    for c in 1..=limit {
        reach[c as usize] = gens.iter().any(|&g| g <= c && reach[(c - g) as usize]);
    }
    (1..=limit).filter(|&c| reach[c as usize]).collect()
}

pub fn check_property_d<M: Monomial>(ring: &Ring<M>) -> PropertyDReport {
    let n = ring.complex_dim();
    let d = divisor_subring(ring);
    let v = choose_complement(ring, &d);
    let render = |c: &HomogeneousClass| c.element(ring).to_string();
    let codeg = |c: &HomogeneousClass| 2 * n - c.degree;
    let horizon = format!(
        "effective classes with 0 < c1 <= 4N = {}; beyond that every codegree sum exceeds 4N",
        4 * n
    );
    let betas = effective_cherns(ring, 4 * n);
    let mut report = PropertyDReport {
        ring: ring.name().to_string(),
        complex_dim: n,
        divisor_basis: d.iter().map(render).collect(),
        complement_basis: v.iter().map(render).collect(),
        status: PropertyDStatus::HoldsTrivially,
        beta_cherns: betas.clone(),
        horizon,
        evidence: Vec::new(),
        feasible: Vec::new(),
        min_required_codeg_d: None,
        max_codeg_d: None,
        min_required_sum: None,
        max_achievable_sum: None,
        summary: String::new(),
    };
    if v.is_empty() {
        report.summary = "complement is zero: every class is generated by divisors".into();
        return report;
    }
    let unit = ring.unit_index();
    let ds: Vec<&HomogeneousClass> = d.iter().filter(|c| !c.is_unit_class(unit)).collect();
    for &beta in &betas {
        for dv in &ds {
            for vv in &v {
                let required_sum = 2 * n + 2 * beta - 2;
                let line = EvidenceLine {
                    d: render(dv),
                    v: render(vv),
                    beta_chern: beta,
                    codeg_d: codeg(dv),
                    codeg_v: codeg(vv),
                    required_sum,
                    required_codeg_d: required_sum - codeg(vv),
                    feasible: codeg(dv) + codeg(vv) == required_sum,
                };
                if line.feasible {
                    report.feasible.push(line.clone());
                }
                report.evidence.push(line);
            }
        }
    }
    report.min_required_codeg_d = report.evidence.iter().map(|l| l.required_codeg_d).min();
    report.max_codeg_d = ds.iter().map(|c| codeg(c)).max();
    report.min_required_sum = report.evidence.iter().map(|l| l.required_sum).min();
    report.max_achievable_sum = ds.iter().map(|c| codeg(c)).max().zip(v.iter().map(|c| codeg(c)).max()).map(|(a, b)| a + b);
    if report.feasible.is_empty() {
        report.status = PropertyDStatus::HoldsCertificate;
        report.summary = match (report.min_required_codeg_d, report.max_codeg_d) {
            (Some(req), Some(max)) => format!("required codegree of d is {} > {}", req, max.max(2 * n)),
            _ => "no pair (d, v) can meet the dimension formula".into(),
        };
    } else {
        report.status = PropertyDStatus::Inconclusive;
        report.summary = format!("{} (d, v, beta) triples pass the dimension count", report.feasible.len());
    }
    report
}

/// `I = 0` criteria: Property 𝒟 and finite order of every top-degree unit.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingVerdict {
    pub ring: String,
    pub coeff_bound: i64,
    pub cap: u64,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub kappa: Ratio<i64>,
    pub property_d: PropertyDStatus,
    pub units_examined: usize,
    pub all_finite_order: bool,
    pub unit_completeness: Completeness,
    pub satisfied: bool,
    pub verdict: String,
    pub failed_legs: Vec<String>,
}

pub const CRITERIA_SATISFIED: &str = "I = 0 criteria satisfied";
pub const CRITERIA_NOT_ESTABLISHED: &str = "criteria not established";

pub fn vanishing_verdict(ring: &Ring<NovikovMonomial>, coeff_bound: i64, cap: u64) -> Result<VanishingVerdict> {
    let pd = check_property_d(ring);
    let orders = finite_order_verdict(ring, coeff_bound, cap)?;
    let mut failed_legs = Vec::new();
    if !pd.status.holds() {
        failed_legs.push(format!("property D {}: {}", pd.status.as_str(), pd.summary));
    }
    if !orders.all_finite {
        let bad: Vec<String> =
            orders.orders.iter().filter(|o| !o.finite).map(|o| o.subject.to_string()).collect();
        failed_legs.push(format!("no finite order within cap {} for {}", cap, bad.join(", ")));
    }
    let satisfied = failed_legs.is_empty();
    Ok(VanishingVerdict {
        ring: ring.name().to_string(),
        coeff_bound,
        cap,
        kappa: ring.kappa(),
        property_d: pd.status,
        units_examined: orders.orders.len(),
        all_finite_order: orders.all_finite,
        unit_completeness: orders.units.completeness.clone(),
        satisfied,
        verdict: if satisfied { CRITERIA_SATISFIED } else { CRITERIA_NOT_ESTABLISHED }.to_string(),
        failed_legs,
    })
}

#[cfg(test)]
mod tests;
