//! Concrete rings: `CP^n`, finite products of projective spaces, `G(2,4)`.

mod id;
pub mod presentation;
mod product;

use num_rational::{BigRational, Ratio};
use num_traits::One;

pub use id::{CatalogId, RingKind};
pub use presentation::{build_enriched, monomial_label, PolyTerm, Presentation, PresentationRelation};
pub use product::make_product_enriched;

use crate::algebra::{CoefficientMode, Ring, RingDescriptor, RingStructure};
use crate::error::{Error, Result};
use crate::novikov::{display_phi, EnrichedMonomial, NovikovMonomial, SphereClass};

/// A catalog ring in whichever coefficient mode was requested.
#[derive(Clone, Debug)]
pub enum CatalogRing {
    Enriched(Ring<EnrichedMonomial>),
    Novikov(Ring<NovikovMonomial>),
}

impl CatalogRing {
    pub fn name(&self) -> &str {
        match self {
            CatalogRing::Enriched(r) => r.name(),
            CatalogRing::Novikov(r) => r.name(),
        }
    }

    pub fn mode(&self) -> CoefficientMode {
        match self {
            CatalogRing::Enriched(r) => r.mode(),
            CatalogRing::Novikov(r) => r.mode(),
        }
    }

    pub fn novikov(&self) -> Option<&Ring<NovikovMonomial>> {
        match self {
            CatalogRing::Novikov(r) => Some(r),
            CatalogRing::Enriched(_) => None,
        }
    }

    pub fn enriched(&self) -> Option<&Ring<EnrichedMonomial>> {
        match self {
            CatalogRing::Enriched(r) => Some(r),
            CatalogRing::Novikov(_) => None,
        }
    }
}

fn base_name(name: &str) -> &str {
    name.split('@').next().unwrap_or(name)
}

/// `Φ = id ⊗ φ` in the display convention: `e^{-A} ↦ q^{c₁(A)} t^{ω(A)}`.
pub fn to_universal(ring: &RingDescriptor<EnrichedMonomial>) -> Ring<NovikovMonomial> {
    let classes = ring.sphere_classes().to_vec();
    ring.map_coefficients(format!("{}@universal", base_name(ring.name())), CoefficientMode::Universal, |m| {
        display_phi(m, &classes)
    })
}

/// As [`to_universal`] followed by stripping q.
pub fn to_lambda(ring: &RingDescriptor<EnrichedMonomial>) -> Ring<NovikovMonomial> {
    let classes = ring.sphere_classes().to_vec();
    ring.map_coefficients(format!("{}@lambda", base_name(ring.name())), CoefficientMode::Lambda, |m| {
        NovikovMonomial::t_only(display_phi(m, &classes).t)
    })
}

fn in_mode(ring: Ring<EnrichedMonomial>, mode: CoefficientMode) -> CatalogRing {
    match mode {
        CoefficientMode::Enriched => CatalogRing::Enriched(ring),
        CoefficientMode::Universal => CatalogRing::Novikov(to_universal(&ring)),
        CoefficientMode::Lambda => CatalogRing::Novikov(to_lambda(&ring)),
    }
}

/// Presentation `ℚ[x, e]/(x^{n+1} = e)` of `CP^n`, with `e = e^{-L}`.
pub fn cpn_presentation(n: i64, kappa: Ratio<i64>) -> Result<Presentation> {
    if n < 1 {
        return Err(Error::InvalidDimension(n));
    }
    let top = n as u32 + 1;
    Ok(Presentation {
        name: format!("cpn:{}", n),
        complex_dim: n,
        generators: vec![("x".to_string(), 2 * n - 2)],
        classes: vec![SphereClass::monotone("L", n + 1, kappa)],
        relations: vec![PresentationRelation {
            head: vec![top],
            rhs: vec![PolyTerm::new(BigRational::one(), vec![0], vec![1])],
        }],
        basis: (0..top).map(|k| vec![k]).collect(),
        kappa,
        structure: RingStructure::ProjectiveProduct { dims: vec![n as u32] },
    })
}

/// Siebert–Tian presentation `ℚ[x1, x2, e]/(x1³ = 2 x1 x2, x1² x2 = x2² + e)`.
pub fn g24_presentation() -> Presentation {
    let one = BigRational::one;
    Presentation {
        name: "g24".to_string(),
        complex_dim: 4,
        generators: vec![("x1".to_string(), 6), ("x2".to_string(), 4)],
        classes: vec![SphereClass::monotone("L", 4, Ratio::one())],
        relations: vec![
            PresentationRelation {
                head: vec![3, 0],
                rhs: vec![PolyTerm::new(one() + one(), vec![1, 1], vec![0])],
            },
            PresentationRelation {
                head: vec![2, 1],
                rhs: vec![PolyTerm::new(one(), vec![0, 2], vec![0]), PolyTerm::new(one(), vec![0, 0], vec![1])],
            },
        ],
        basis: vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1], vec![0, 2]],
        kappa: Ratio::one(),
        structure: RingStructure::Grassmannian24,
    }
}

/// A small non-divisorial test ring: `N = 3`, classes `1, h, g, h², f, h³`
/// with `h, g` of degree 4 and `f` of degree 2, no quantum corrections, one
/// sphere class of Chern number 1. The class `f` is not generated by
/// divisors.
pub fn synthetic_presentation() -> Presentation {
    let rel = |head: Vec<u32>, rhs: Vec<PolyTerm>| PresentationRelation { head, rhs };
    Presentation {
        name: "synthetic".to_string(),
        complex_dim: 3,
        generators: vec![("h".to_string(), 4), ("g".to_string(), 4), ("f".to_string(), 2)],
        classes: vec![SphereClass::monotone("A", 1, Ratio::one())],
        relations: vec![
            rel(vec![1, 1, 0], vec![]),
            rel(vec![0, 2, 0], vec![]),
            rel(vec![1, 0, 1], vec![]),
            rel(vec![0, 1, 1], vec![PolyTerm::new(BigRational::one(), vec![3, 0, 0], vec![0])]),
            rel(vec![0, 0, 2], vec![]),
        ],
        basis: vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![2, 0, 0], vec![0, 0, 1], vec![3, 0, 0]],
        kappa: Ratio::one(),
        structure: RingStructure::Custom,
    }
}

pub fn make_synthetic(mode: CoefficientMode) -> Result<CatalogRing> {
    Ok(in_mode(build_enriched(&synthetic_presentation())?, mode))
}

pub fn make_cpn_enriched(n: i64, kappa: Ratio<i64>) -> Result<Ring<EnrichedMonomial>> {
    build_enriched(&cpn_presentation(n, kappa)?)
}

pub fn make_g24_enriched() -> Result<Ring<EnrichedMonomial>> {
    build_enriched(&g24_presentation())
}

/// `CP^n` in the given mode, κ = 1.
pub fn make_cpn(n: i64, mode: CoefficientMode) -> Result<CatalogRing> {
    Ok(in_mode(make_cpn_enriched(n, Ratio::one())?, mode))
}

/// `G(2,4)` in the given mode.
pub fn make_g24(mode: CoefficientMode) -> Result<CatalogRing> {
    Ok(in_mode(make_g24_enriched()?, mode))
}

/// Product of catalog factors via quantum Künneth.
pub fn make_product(ids: &[CatalogId], mode: CoefficientMode) -> Result<CatalogRing> {
    for id in ids {
        if let Some(m) = id.mode {
            if m != mode {
                return Err(Error::ModeMismatch(format!(
                    "factor {} is {} but the product is {}",
                    id,
                    m.as_str(),
                    mode.as_str()
                )));
            }
        }
    }
    let factors = ids.iter().map(build_enriched_id).collect::<Result<Vec<_>>>()?;
    Ok(in_mode(make_product_enriched(&factors)?, mode))
}

fn build_enriched_id(id: &CatalogId) -> Result<Ring<EnrichedMonomial>> {
    match &id.kind {
        RingKind::Cpn(n) => make_cpn_enriched(*n, Ratio::one()),
        RingKind::G24 => make_g24_enriched(),
        RingKind::Product(ids) => {
            let factors = ids.iter().map(build_enriched_id).collect::<Result<Vec<_>>>()?;
            make_product_enriched(&factors)
        }
    }
}

/// Build a ring from its id; lambda is the default mode.
pub fn build(id: &CatalogId) -> Result<CatalogRing> {
    let mode = id.effective_mode()?;
    match &id.kind {
        RingKind::Product(ids) => make_product(ids, mode),
        _ => Ok(in_mode(build_enriched_id(id)?, mode)),
    }
}

/// Parse and build, e.g. `g24`, `cpn:2@universal`, `prod:cpn:1,cpn:2`.
pub fn build_str(s: &str) -> Result<CatalogRing> {
    build(&s.parse()?)
}

/// The ring from `s` as a Novikov-coefficient ring; enriched ids are rejected.
pub fn build_novikov(s: &str) -> Result<Ring<NovikovMonomial>> {
    match build_str(s)? {
        CatalogRing::Novikov(r) => Ok(r),
        CatalogRing::Enriched(r) => Err(Error::ModeMismatch(format!("{} has enriched coefficients", r.name()))),
    }
}

/// The enriched version of the ring named by `s`, ignoring any mode suffix.
pub fn build_enriched_str(s: &str) -> Result<Ring<EnrichedMonomial>> {
    let id: CatalogId = s.parse()?;
    build_enriched_id(&id.without_modes())
}

/// Ids of the rings the structural suite covers.
pub const STANDARD_IDS: &[&str] = &["cpn:1", "cpn:2", "cpn:3", "cpn:4", "g24", "prod:cpn:1,cpn:1", "prod:cpn:1,cpn:2"];

#[cfg(test)]
mod tests;
