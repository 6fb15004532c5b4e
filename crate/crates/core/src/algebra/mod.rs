//! Finite-rank graded algebras over Novikov scalars.

pub mod element;
pub mod linalg;
pub mod ring;
pub mod units;

pub use element::{AlgebraElement, ElementReport, TermReport};
pub use ring::{
    BasisClass, CoefficientMode, Generator, Relation, Ring, RingDescriptor, RingParts, RingStructure, ScalarSymbols,
    StructureReport,
};
pub use units::{element_order, total_degree, DEFAULT_ORDER_CAP, inverse, is_unit, multiplication_matrix, psi, psi_inv, OrderReport, OrderSummary, UnitTest};

#[cfg(test)]
mod tests;
