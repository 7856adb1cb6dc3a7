use std::path::PathBuf;

use serde_json::json;

use koszul_core::barcobar::{bar as bar_reduced_default, bar_nonreduced, cobar as cobar_of, MCElement};
use koszul_core::coalgebra::{dualize, PointedCurvedCoalgebra};
use koszul_core::modcomod::{twist_comodule, twist_module};
use koszul_core::nerve::{homology_table, l_functor};
use koszul_core::simplicial::{twisted_chains as chains_of, FiniteSimplicialSet};
use koszul_core::uncurve::{EtaMode, HBound, Uncurving};
use koszul_core::DgCategory;

use super::{Ctx, EtaKind, InputError, Output};
use crate::doc::Document;

fn wrong_kind(path: &PathBuf, want: &str, got: &Document) -> InputError {
    InputError::Usage(format!("{}: expected a {want} document, found {}", path.display(), got.kind()))
}

pub(super) fn load_dgcat(ctx: &Ctx, path: &PathBuf) -> Result<DgCategory, InputError> {
    match ctx.load(path)? {
        Document::DgCat(d) => Ok(d),
        other => Err(wrong_kind(path, "dgcat", &other)),
    }
}

pub(super) fn load_coalgebra(ctx: &Ctx, path: &PathBuf) -> Result<PointedCurvedCoalgebra, InputError> {
    match ctx.load(path)? {
        Document::Coalgebra(c) => Ok(c),
        other => Err(wrong_kind(path, "coalgebra", &other)),
    }
}

pub(super) fn load_sset(ctx: &Ctx, path: &PathBuf) -> Result<FiniteSimplicialSet, InputError> {
    match ctx.load(path)? {
        Document::SSet(k) => Ok(k),
        other => Err(wrong_kind(path, "sset", &other)),
    }
}

pub(super) fn load_mc(ctx: &Ctx, path: &PathBuf) -> Result<(PointedCurvedCoalgebra, DgCategory, MCElement), InputError> {
    match ctx.load(path)? {
        Document::Mc { coalgebra, category, mc } => Ok((coalgebra, category, mc)),
        other => Err(wrong_kind(path, "mc", &other)),
    }
}

pub(super) fn bar(ctx: &Ctx, path: &PathBuf, nonreduced: bool) -> Result<Output, InputError> {
    let d = load_dgcat(ctx, path)?;
    let w = ctx.bound(2);
    let b = if nonreduced { bar_nonreduced(&d, w) } else { bar_reduced_default(&d, w)? };
    Ok(Output::document(&Document::Coalgebra(b.coalgebra)))
}

pub(super) fn cobar(ctx: &Ctx, path: &PathBuf) -> Result<Output, InputError> {
    let c = load_coalgebra(ctx, path)?;
    Ok(Output::document(&Document::DgCat(cobar_of(&c, ctx.bound(3)))))
}

pub(super) fn uncurve(ctx: &Ctx, path: &PathBuf, eta: EtaKind) -> Result<Output, InputError> {
    let c = load_coalgebra(ctx, path)?;
    let a = dualize(&c);
    let mode = match eta {
        EtaKind::Pointed => EtaMode::Pointed,
        EtaKind::Free => EtaMode::Free,
    };
    let h = Uncurving::new(&a, mode, HBound::EtaCount(ctx.bound(2))).to_category()?;
    Ok(Output::document(&Document::DgCat(h)))
}

pub(super) fn twisted_chains(ctx: &Ctx, path: &PathBuf) -> Result<Output, InputError> {
    let k = load_sset(ctx, path)?;
    Ok(Output::document(&Document::Coalgebra(chains_of(ctx.field(), &k))))
}

pub(super) fn l(ctx: &Ctx, path: &PathBuf, homology: bool) -> Result<Output, InputError> {
    let k = load_sset(ctx, path)?;
    let d = l_functor(ctx.field(), &k, ctx.bound(3));
    if !homology {
        return Ok(Output::document(&Document::DgCat(d)));
    }
    let (lo, hi) = ctx.window((-3, 0));
    let rows = homology_table(&d, lo, hi)?;
    let names = d.objects();
    let mut lines = vec![format!("homology of L in degrees {lo}..{hi}")];
    let mut table = Vec::new();
    for r in &rows {
        let (s, t) = (&names[r.source], &names[r.target]);
        lines.push(format!("  {s} -> {t}  degree {:>3}  dim {}{}", r.degree, r.dim, if r.exact { "" } else { "  (truncated)" }));
        table.push(json!({ "source": s, "target": t, "degree": r.degree, "dim": r.dim, "exact": r.exact }));
    }
    Ok(Output::report(ctx.cli.format, true, lines, json!({ "command": "L", "rows": table })))
}

pub(super) fn twist(ctx: &Ctx, mc: &PathBuf, path: &PathBuf) -> Result<Output, InputError> {
    let (c, d, tau) = load_mc(ctx, mc)?;
    match ctx.load(path)? {
        Document::Comodule { coalgebra, comodule } => {
            if coalgebra != c {
                return Err(InputError::Usage("the comodule is over a different coalgebra than the MC element".into()));
            }
            let module = twist_module(&c, &d, &tau, &comodule)?;
            Ok(Output::document(&Document::Module { category: d, module }))
        }
        Document::Module { category, module } => {
            if category != d {
                return Err(InputError::Usage("the module is over a different category than the MC element".into()));
            }
            let comodule = twist_comodule(&c, &d, &tau, &module)?;
            Ok(Output::document(&Document::Comodule { coalgebra: c, comodule }))
        }
        other => Err(wrong_kind(path, "comodule or module", &other)),
    }
}
