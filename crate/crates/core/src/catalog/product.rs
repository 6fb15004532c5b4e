use crate::algebra::ring::{BasisClass, CoefficientMode, Relation, Ring, RingDescriptor, RingParts, RingStructure};
use crate::error::{Error, Result};
use crate::novikov::{EnrichedMonomial, EnrichedScalar, Scalar, SphereClass};

use super::presentation::monomial_label;

fn shift(s: &EnrichedScalar, offset: usize) -> EnrichedScalar {
    s.map_monomials(|m| {
        let mut v = vec![0; offset];
        v.extend_from_slice(m.exponents());
        EnrichedMonomial::new(v)
    })
}

/// `v₁ ⊗ ⋯ ⊗ v_k` in the lexicographic product basis.
fn tensor(parts: &[&[EnrichedScalar]], offsets: &[usize]) -> Vec<EnrichedScalar> {
    let mut acc = vec![Scalar::one()];
    for (v, &off) in parts.iter().zip(offsets) {
        let shifted: Vec<EnrichedScalar> = v.iter().map(|s| shift(s, off)).collect();
        let mut next = Vec::with_capacity(acc.len() * v.len());
        for a in &acc {
            for s in &shifted {
                next.push(if a.is_zero() || s.is_zero() { Scalar::zero() } else { a * s });
            }
        }
        acc = next;
    }
    acc
}

fn base_name(name: &str) -> &str {
    let b = name.split('@').next().unwrap_or(name);
    b.strip_prefix("prod:").unwrap_or(b)
}

/// Multi-indices of the product basis, first factor slowest.
fn multi_indices(ranks: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &r in ranks {
        out = out.into_iter().flat_map(|p| (0..r).map(move |k| {
            let mut q = p.clone();
            q.push(k);
            q
        })).collect();
    }
    out
}

/// Quantum Künneth: `(a'⊗a'')*(b'⊗b'') = (a'*b')⊗(a''*b'')`, sphere classes
/// of the factors kept as separate symbols.
pub fn make_product_enriched(factors: &[Ring<EnrichedMonomial>]) -> Result<Ring<EnrichedMonomial>> {
    let Some(first) = factors.first() else {
        return Err(Error::UnknownRing("empty product".into()));
    };
    if let Some(f) = factors.iter().find(|f| f.mode() != CoefficientMode::Enriched) {
        return Err(Error::ModeMismatch(format!("{} is not enriched", f.name())));
    }
    if factors.iter().any(|f| f.kappa() != first.kappa()) {
        return Err(Error::InvalidPresentation("factors have different monotonicity constants".into()));
    }
    let many = factors.len() > 1;
    let mut generators = Vec::new();
    let mut classes = Vec::new();
    let mut class_offsets = Vec::new();
    let mut gen_offsets = Vec::new();
    for (f, ring) in factors.iter().enumerate() {
        gen_offsets.push(generators.len());
        class_offsets.push(classes.len());
        for g in ring.generators() {
            let name = if many { format!("{}_{}", g.name, f + 1) } else { g.name.clone() };
            generators.push((name, g.degree));
        }
        for a in ring.sphere_classes() {
            let label = if many { format!("{}{}", a.label, f + 1) } else { a.label.clone() };
            classes.push(SphereClass::new(label, a.chern, a.energy));
        }
    }
    let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
    let ranks: Vec<usize> = factors.iter().map(|f| f.rank()).collect();
    let indices = multi_indices(&ranks);

    let basis: Vec<BasisClass> = indices
        .iter()
        .map(|idx| {
            let mut exps = Vec::new();
            let mut degree = 0;
            for (ring, &k) in factors.iter().zip(idx) {
                let b = &ring.basis()[k];
                exps.extend_from_slice(&b.exponents);
                degree += b.degree;
            }
            BasisClass { label: monomial_label(&names, &exps), degree, exponents: exps }
        })
        .collect();

    let table: Vec<Vec<Vec<EnrichedScalar>>> = indices
        .iter()
        .map(|i| {
            indices
                .iter()
                .map(|j| {
                    let parts: Vec<&[EnrichedScalar]> =
                        factors.iter().enumerate().map(|(f, r)| r.product(i[f], j[f])).collect();
                    tensor(&parts, &class_offsets)
                })
                .collect()
        })
        .collect();

    let units: Vec<Vec<EnrichedScalar>> = factors
        .iter()
        .map(|r| (0..r.rank()).map(|k| if k == r.unit_index() { Scalar::one() } else { Scalar::zero() }).collect())
        .collect();
    let mut relations = Vec::new();
    for (f, ring) in factors.iter().enumerate() {
        for rel in ring.relations() {
            let mut head = vec![0; generators.len()];
            for (k, &e) in rel.head.iter().enumerate() {
                head[gen_offsets[f] + k] = e;
            }
            let parts: Vec<&[EnrichedScalar]> =
                (0..factors.len()).map(|g| if g == f { &rel.replacement[..] } else { &units[g][..] }).collect();
            relations.push(Relation { head, replacement: tensor(&parts, &class_offsets) });
        }
    }

    let structure = {
        let mut dims = Vec::new();
        let mut all = true;
        for r in factors {
            match r.structure() {
                RingStructure::ProjectiveProduct { dims: d } => dims.extend(d),
                _ => all = false,
            }
        }
        if all { RingStructure::ProjectiveProduct { dims } } else { RingStructure::Custom }
    };
    let name = format!(
        "prod:{}@enriched",
        factors.iter().map(|f| base_name(f.name())).collect::<Vec<_>>().join(",")
    );
    RingDescriptor::from_parts(RingParts {
        name,
        mode: CoefficientMode::Enriched,
        complex_dim: factors.iter().map(|f| f.complex_dim()).sum(),
        generators,
        basis,
        table,
        relations,
        sphere_classes: classes,
        kappa: first.kappa(),
        structure,
    })
}
