use num_rational::Ratio;
use serde::Serialize;

use super::monomial::{EnrichedMonomial, Monomial, NovikovMonomial};

/// A spherical class `A` with its Chern number `c₁(A)` and area `ω(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SphereClass {
    pub label: String,
    pub chern: i64,
    #[serde(serialize_with = "crate::report::ser_ratio")]
    pub energy: Ratio<i64>,
}

impl SphereClass {
    pub fn new(label: impl Into<String>, chern: i64, energy: Ratio<i64>) -> Self {
        SphereClass { label: label.into(), chern, energy }
    }

    /// A class on a monotone manifold with `ω = κ c₁`.
    pub fn monotone(label: impl Into<String>, chern: i64, kappa: Ratio<i64>) -> Self {
        SphereClass::new(label, chern, kappa * Ratio::from_integer(chern))
    }
}

/// How Novikov exponents are written.
///
/// Ring tables record the quantum correction `e^{-A}` as `q^{c₁(A)} t^{ω(A)}`
/// (positive exponents, `Display`). `PhiFaithful` is the literal image
/// `φ(e^{-A}) = q^{-c₁(A)} t^{-ω(A)}`; the two differ by inverting every
/// monomial.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    Display,
    PhiFaithful,
}

impl Convention {
    /// Convert a stored (display) monomial into this convention, or back.
    pub fn apply<M: Monomial>(self, m: &M) -> M {
        match self {
            Convention::Display => m.clone(),
            Convention::PhiFaithful => m.inv(),
        }
    }
}

/// `φ(e^{-A₁} ⋯ e^{-A_k}) = q^{-Σc₁} t^{-Σω}`.
pub fn phi(classes: &[&SphereClass]) -> NovikovMonomial {
    classes.iter().fold(NovikovMonomial::one(), |acc, a| {
        acc.mul(&NovikovMonomial::new(-a.chern, -a.energy))
    })
}

/// `φ` applied to an enriched symbol whose exponents refer to `classes`.
pub fn phi_enriched(m: &EnrichedMonomial, classes: &[SphereClass]) -> NovikovMonomial {
    classes.iter().enumerate().fold(NovikovMonomial::one(), |acc, (i, a)| {
        let k = m.exponent(i);
        acc.mul(&NovikovMonomial::new(-a.chern * k, -a.energy * Ratio::from_integer(k)))
    })
}

/// Universal-mode storage of an enriched symbol: `φ` in the display convention.
pub fn display_phi(m: &EnrichedMonomial, classes: &[SphereClass]) -> NovikovMonomial {
    phi_enriched(m, classes).inv()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_of_line_in_cp1() {
        let line = SphereClass::monotone("L", 2, Ratio::from_integer(1));
        assert_eq!(phi(&[&line]), NovikovMonomial::qt(-2, -2));
        assert!(phi(&[]).is_one());
    }

    #[test]
    fn phi_is_additive_over_classes() {
        let a = SphereClass::new("A", 2, Ratio::new(3, 2));
        let b = SphereClass::new("B", 3, Ratio::from_integer(5));
        assert_eq!(phi(&[&a, &b]), phi(&[&a]).mul(&phi(&[&b])));
    }

    #[test]
    fn enriched_phi_matches_multiset_phi() {
        let classes = vec![
            SphereClass::monotone("L1", 2, Ratio::from_integer(1)),
            SphereClass::monotone("L2", 3, Ratio::from_integer(1)),
        ];
        let m = EnrichedMonomial::new(vec![2, 1]);
        assert_eq!(phi_enriched(&m, &classes), phi(&[&classes[0], &classes[0], &classes[1]]));
        assert_eq!(display_phi(&m, &classes), NovikovMonomial::qt(7, 7));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn classes() -> impl Strategy<Value = Vec<SphereClass>> {
            prop::collection::vec((1i64..=5, -6i64..=6, 1i64..=3), 1..=3).prop_map(|v| {
                v.into_iter().enumerate().map(|(i, (c, n, d))| SphereClass::new(format!("A{}", i), c, Ratio::new(n, d))).collect()
            })
        }

        proptest! {
            #[test]
            fn phi_is_multiplicative(cs in classes(), x in prop::collection::vec(-4i64..=4, 3), y in prop::collection::vec(-4i64..=4, 3)) {
                let k = cs.len();
                let a = EnrichedMonomial::new(x[..k].to_vec());
                let b = EnrichedMonomial::new(y[..k].to_vec());
                let lhs = phi_enriched(&a.mul(&b), &cs);
                prop_assert_eq!(lhs, phi_enriched(&a, &cs).mul(&phi_enriched(&b, &cs)));
                prop_assert!(display_phi(&a, &cs).mul(&phi_enriched(&a, &cs)).is_one());
            }
        }
    }
}
