use koszul_core::coalgebra::PointedCurvedCoalgebra;
use koszul_core::simplicial::{fixtures as sset_fixtures, sphere};
use koszul_core::{fixtures, DgCategory, Field};

use super::{Ctx, InputError, Output};
use crate::doc::Document;

fn category(name: &str, f: Field) -> Option<DgCategory> {
    Some(match name {
        "k" => fixtures::k(f),
        "A2" => fixtures::a2(f),
        "S0" => fixtures::s_n(f, 0),
        "S1" => fixtures::s_n(f, 1),
        "S2" => fixtures::s_n(f, 2),
        "D1" => fixtures::d_n(f, 1),
        "fgh" => fixtures::fgh(f),
        "k_x" => fixtures::k_x(f),
        "k_eps" => fixtures::k_eps(f, 0),
        _ => return None,
    })
}

/// Every name `fixture` accepts.
pub fn names() -> Vec<String> {
    let mut out: Vec<String> =
        ["k", "A2", "S0", "S1", "S2", "D1", "fgh", "k_x", "k_eps", "zero-coalgebra", "sphere2"].map(String::from).to_vec();
    out.extend(sset_fixtures().into_iter().map(|(n, _)| n));
    out
}

pub(super) fn fixture(ctx: &Ctx, name: &str) -> Result<Output, InputError> {
    let f = ctx.field();
    if let Some(d) = category(name, f) {
        return Ok(Output::document(&Document::DgCat(d)));
    }
    if name == "zero-coalgebra" {
        return Ok(Output::document(&Document::Coalgebra(PointedCurvedCoalgebra::coradical(f, Vec::new()))));
    }
    if name == "sphere2" {
        return Ok(Output::document(&Document::SSet(sphere(2))));
    }
    if let Some((_, k)) = sset_fixtures().into_iter().find(|(n, _)| n == name) {
        return Ok(Output::document(&Document::SSet(k)));
    }
    Err(InputError::Usage(format!("unknown fixture {name}; known: {}", names().join(", "))))
}
