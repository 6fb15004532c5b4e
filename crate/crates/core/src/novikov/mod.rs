//! Novikov coefficients: monomials `q^a t^b` and enriched symbols `e^{-A}`,
//! finite rational sums of them, and the maps between the two pictures.

mod maps;
mod monomial;
mod scalar;

pub use maps::{display_phi, phi, phi_enriched, Convention, SphereClass};
pub use monomial::{EnrichedMonomial, Monomial, NovikovMonomial};
pub use scalar::{rat, ratio, EnrichedScalar, NovikovScalar, Scalar};
