//! Serialization helpers shared by the report types.

use num_rational::{BigRational, Ratio};
use serde::{Serialize, Serializer};

/// Version stamped into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

pub fn ser_ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_big<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// Wraps a report with the schema version and a kind tag.
#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema_version: u32,
    pub kind: &'a str,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn to_json<T: Serialize>(kind: &str, body: &T) -> String {
    serde_json::to_string_pretty(&Envelope { schema_version: SCHEMA_VERSION, kind, body })
        .expect("report serialization is infallible")
}

use crate::algebra::{AlgebraElement, BasisClass, CoefficientMode, Generator, Ring, RingStructure};
use crate::novikov::{Convention, Monomial, SphereClass};

#[derive(Serialize)]
pub struct TableDump {
    pub ring: String,
    pub entries: Vec<TableEntry>,
}

#[derive(Serialize)]
pub struct TableEntry {
    pub left: String,
    pub right: String,
    pub product: String,
}

/// Everything `ring info` prints; the table only on request.
#[derive(Serialize)]
pub struct RingInfo {
    pub ring: String,
    pub mode: CoefficientMode,
    pub complex_dim: i64,
    #[serde(serialize_with = "ser_ratio")]
    pub kappa: Ratio<i64>,
    pub min_chern: i64,
    pub structure: RingStructure,
    pub generators: Vec<Generator>,
    pub basis: Vec<BasisClass>,
    pub sphere_classes: Vec<SphereClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableEntry>>,
}

pub fn table_dump<M: Monomial>(ring: &Ring<M>, convention: Convention) -> TableDump {
    TableDump { ring: ring.name().to_string(), entries: table_entries(ring, convention) }
}

/// Upper triangle of the multiplication table, rendered.
pub fn table_entries<M: Monomial>(ring: &Ring<M>, convention: Convention) -> Vec<TableEntry> {
    let mut out = Vec::new();
    for i in 0..ring.rank() {
        for j in i..ring.rank() {
            let p = &AlgebraElement::basis(ring, i) * &AlgebraElement::basis(ring, j);
            out.push(TableEntry {
                left: ring.basis()[i].label.clone(),
                right: ring.basis()[j].label.clone(),
                product: p.render(convention),
            });
        }
    }
    out
}

pub fn ring_info<M: Monomial>(ring: &Ring<M>, with_table: bool, convention: Convention) -> RingInfo {
    RingInfo {
        ring: ring.name().to_string(),
        mode: ring.mode(),
        complex_dim: ring.complex_dim(),
        kappa: ring.kappa(),
        min_chern: ring.min_chern(),
        structure: ring.structure().clone(),
        generators: ring.generators().to_vec(),
        basis: ring.basis().to_vec(),
        sphere_classes: ring.sphere_classes().to_vec(),
        table: with_table.then(|| table_entries(ring, convention)),
    }
}
