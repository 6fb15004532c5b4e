//! Exact quantum homology of projective spaces, their products and G(2,4).

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod group;
pub mod novikov;
pub mod parse;
pub mod property_d;
pub mod report;
pub mod seidel;
pub mod verify;

pub use algebra::{AlgebraElement, CoefficientMode, Ring, RingDescriptor};
pub use error::{Error, Result};
pub use novikov::{Convention, EnrichedMonomial, Monomial, NovikovMonomial, Scalar};
