//! Versioned JSON documents with canonical serialization.
//!
//! Every document is `{"schema": 1, "kind": ..., "field": ..., "body": ...}`. Lists of
//! basis elements keep their order so that parsing a serialized value gives the value
//! back; everything keyed by label is written as a sorted map.

mod read;
mod write;

use koszul_core::barcobar::MCElement;
use koszul_core::coalgebra::{CoalgebraMorphism, PointedCurvedCoalgebra};
use koszul_core::modcomod::{Comodule, Module};
use koszul_core::simplicial::FiniteSimplicialSet;
use koszul_core::{DgCategory, Field};

pub use read::{parse, parse_value};
pub use write::{serialize, to_value};

pub const SCHEMA: u64 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    DgCat(DgCategory),
    Coalgebra(PointedCurvedCoalgebra),
    SSet(FiniteSimplicialSet),
    Comodule { coalgebra: PointedCurvedCoalgebra, comodule: Comodule },
    Module { category: DgCategory, module: Module },
    Mc { coalgebra: PointedCurvedCoalgebra, category: DgCategory, mc: MCElement },
    Morphism { source: PointedCurvedCoalgebra, target: PointedCurvedCoalgebra, morphism: CoalgebraMorphism },
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::DgCat(_) => "dgcat",
            Document::Coalgebra(_) => "coalgebra",
            Document::SSet(_) => "sset",
            Document::Comodule { .. } => "comodule",
            Document::Module { .. } => "module",
            Document::Mc { .. } => "mc",
            Document::Morphism { .. } => "morphism",
        }
    }

    /// The ground field; simplicial sets carry none.
    pub fn field(&self) -> Option<Field> {
        match self {
            Document::DgCat(d) => Some(d.field),
            Document::Coalgebra(c) => Some(c.field),
            Document::SSet(_) => None,
            Document::Comodule { coalgebra, .. } => Some(coalgebra.field),
            Document::Module { category, .. } => Some(category.field),
            Document::Mc { coalgebra, .. } => Some(coalgebra.field),
            Document::Morphism { source, .. } => Some(source.field),
        }
    }
}

/// Schema violation, located by a JSON pointer.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {pointer}: {message}")]
pub struct ParseError {
    pub pointer: String,
    pub message: String,
}

#[cfg(test)]
mod tests;
