use std::path::PathBuf;
use std::process::{Command as Process, Stdio};

use serde_json::{json, Map, Value};

use koszul_core::barcobar::{counit_check as counit, mc_check_report, mc_enumerate};
use koszul_core::coalgebra::{validate_coalgebra_morphism, validate_pointed_curved_coalgebra};
use koszul_core::dgcat::validate_dg_category;
use koszul_core::modcomod::{fg_adjunction_check, validate_comodule, validate_module};
use koszul_core::nerve::{
    f_level_enumerate, nerve_candidates, nerve_enumerate, nerve_simplex_check_lurie, nerve_simplex_check_mc, NerveSimplex,
    SimplexChains,
};
use koszul_core::simplicial::{normalized_chains, validate_normalized_chains, validate_sset};
use koszul_core::{DgCategory, Report, Vector};

use super::convert::{load_coalgebra, load_dgcat, load_mc, load_sset};
use super::output::{failures_json, failures_text};
use super::{Ctx, Format, InputError, Output};
use crate::acceptance::{self, Status};
use crate::doc::Document;

fn labelled(v: &Vector<usize>, label: impl Fn(usize) -> String) -> Value {
    Value::Object(v.iter().map(|(k, c)| (label(*k), Value::String(c.to_text()))).collect())
}

fn verdict(ctx: &Ctx, what: &str, r: &Report) -> Output {
    let mut lines = vec![format!("{what}: {}", if r.is_valid() { "valid" } else { "INVALID" })];
    lines.extend(failures_text(r));
    Output::report(ctx.cli.format, r.is_valid(), lines, json!({ "check": what, "failures": failures_json(r) }))
}

pub(super) fn validate(ctx: &Ctx, path: &PathBuf) -> Result<Output, InputError> {
    let doc = ctx.load(path)?;
    let r = match &doc {
        Document::DgCat(d) => validate_dg_category(d),
        Document::Coalgebra(c) => validate_pointed_curved_coalgebra(c),
        Document::SSet(k) => validate_sset(k),
        Document::Comodule { coalgebra, comodule } => {
            let mut r = validate_pointed_curved_coalgebra(coalgebra);
            r.merge(validate_comodule(coalgebra, comodule));
            r
        }
        Document::Module { category, module } => {
            let mut r = validate_dg_category(category);
            r.merge(validate_module(category, module));
            r
        }
        Document::Mc { coalgebra, category, mc } => mc_check_report(coalgebra, category, mc),
        Document::Morphism { source, target, morphism } => validate_coalgebra_morphism(source, target, morphism),
    };
    Ok(verdict(ctx, doc.kind(), &r))
}

pub(super) fn chains(ctx: &Ctx, path: &PathBuf) -> Result<Output, InputError> {
    let k = load_sset(ctx, path)?;
    let c = normalized_chains(ctx.field(), &k);
    let r = validate_normalized_chains(&c);
    let name = |i: usize| k.simplices[i].label.clone();
    let mut lines = Vec::new();
    let mut cells = Vec::new();
    for (i, s) in k.simplices.iter().enumerate() {
        let d = labelled(&c.differential[i], name);
        let mut coproduct: Vec<(String, String, String)> =
            c.coproduct[i].iter().map(|((a, b), x)| (name(*a), name(*b), x.to_text())).collect();
        coproduct.sort();
        lines.push(format!(
            "{} (degree {}): d = {}, Δ = {}",
            s.label,
            c.degrees[i],
            d,
            coproduct.iter().map(|(a, b, x)| format!("{x}·{a}⊗{b}")).collect::<Vec<_>>().join(" + ")
        ));
        cells.push(json!({ "label": s.label, "degree": c.degrees[i], "differential": d, "coproduct": coproduct }));
    }
    lines.push(format!("chain coalgebra laws: {}", if r.is_valid() { "valid" } else { "INVALID" }));
    lines.extend(failures_text(&r));
    Ok(Output::report(ctx.cli.format, r.is_valid(), lines, json!({ "field": c.field.to_string(), "cells": cells, "failures": failures_json(&r) })))
}

fn simplex_json(d: &DgCategory, x: &NerveSimplex) -> Value {
    let names = d.objects();
    let f: Map<String, Value> = x
        .f
        .iter()
        .map(|(i, v)| (i.iter().map(|j| j.to_string()).collect::<String>(), labelled(v, |k| d.morphism(k).label.clone())))
        .collect();
    json!({ "objects": x.objects.iter().map(|&o| names[o].clone()).collect::<Vec<_>>(), "f": f })
}

fn simplex_text(d: &DgCategory, x: &NerveSimplex) -> String {
    let names = d.objects();
    let objs: Vec<&str> = x.objects.iter().map(|&o| names[o].as_str()).collect();
    let parts: Vec<String> = x
        .f
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| format!("f{} = {}", i.iter().map(|j| j.to_string()).collect::<String>(), d.label_vector(v)))
        .collect();
    format!("({}) {}", objs.join(", "), parts.join(", "))
}

pub(super) fn nerve_check(ctx: &Ctx, path: &PathBuf, n: usize) -> Result<Output, InputError> {
    let d = load_dgcat(ctx, path)?;
    let candidates = nerve_candidates(&d, n, ctx.cli.budget)?;
    let mut simplices = 0;
    let mut disagreements = Vec::new();
    for x in &candidates {
        let lurie = nerve_simplex_check_lurie(&d, x)?;
        if lurie != nerve_simplex_check_mc(&d, x)? {
            disagreements.push(x);
        }
        simplices += usize::from(lurie);
    }
    let ok = disagreements.is_empty();
    let mut lines = vec![format!("level {n}: {} candidates, {simplices} simplices, {} disagreements", candidates.len(), disagreements.len())];
    lines.extend(disagreements.iter().map(|x| format!("  witness {}", simplex_text(&d, x))));
    Ok(Output::report(
        ctx.cli.format,
        ok,
        lines,
        json!({
            "level": n,
            "candidates": candidates.len(),
            "simplices": simplices,
            "disagreements": disagreements.iter().map(|x| simplex_json(&d, x)).collect::<Vec<_>>(),
        }),
    ))
}

pub(super) fn nerve_enum(ctx: &Ctx, path: &PathBuf, n: usize) -> Result<Output, InputError> {
    let d = load_dgcat(ctx, path)?;
    let all = nerve_enumerate(&d, n, ctx.cli.budget)?;
    let mut lines = vec![format!("level {n}: {} simplices", all.len())];
    lines.extend(all.iter().map(|x| format!("  {}", simplex_text(&d, x))));
    let list: Vec<Value> = all.iter().map(|x| simplex_json(&d, x)).collect();
    Ok(Output::report(ctx.cli.format, true, lines, json!({ "level": n, "count": all.len(), "simplices": list })))
}

pub(super) fn f_level(ctx: &Ctx, path: &PathBuf, n: usize) -> Result<Output, InputError> {
    let c = load_coalgebra(ctx, path)?;
    let maps = f_level_enumerate(&c, n, ctx.cli.budget)?;
    let simplex = SimplexChains::new(c.field, n);
    let cell = |i: usize| simplex.chains.basis[i].label.clone();
    let mut lines = vec![format!("level {n}: {} coalgebra maps", maps.len())];
    let mut list = Vec::new();
    for m in &maps {
        let objs: Vec<&str> = m.object_map.iter().map(|&o| c.objects[o].as_str()).collect();
        let linear: Map<String, Value> = m
            .linear
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (cell(i), labelled(v, |k| c.basis[k].label.clone())))
            .collect();
        let a: Vec<String> = m.functional.iter().map(|(k, x)| format!("a({}) = {}", cell(*k), x.to_text())).collect();
        lines.push(format!("  vertices ({}), {} nonzero cells {}", objs.join(", "), linear.len(), a.join(", ")));
        list.push(json!({ "object_map": objs, "linear": linear, "functional": labelled(&m.functional, cell) }));
    }
    Ok(Output::report(ctx.cli.format, true, lines, json!({ "level": n, "count": maps.len(), "maps": list })))
}

pub(super) fn mc_check(ctx: &Ctx, path: &PathBuf) -> Result<Output, InputError> {
    let (c, d, x) = load_mc(ctx, path)?;
    Ok(verdict(ctx, "MC equation", &mc_check_report(&c, &d, &x)))
}

pub(super) fn mc_enum(ctx: &Ctx, cpath: &PathBuf, dpath: &PathBuf) -> Result<Output, InputError> {
    let c = load_coalgebra(ctx, cpath)?;
    let d = load_dgcat(ctx, dpath)?;
    if c.field != d.field {
        return Err(InputError::Usage(format!("fields differ: {} and {}", c.field, d.field)));
    }
    let all = mc_enumerate(&c, &d, ctx.cli.budget)?;
    let mut lines = vec![format!("{} MC elements", all.len())];
    let mut list = Vec::new();
    for x in &all {
        let objs: Vec<String> = x.object_map.iter().map(|&o| d.objects()[o].clone()).collect();
        let xi: Map<String, Value> = x
            .xi
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (c.basis[i].label.clone(), labelled(v, |k| d.morphism(k).label.clone())))
            .collect();
        let parts: Vec<String> = x
            .xi
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{} ↦ {}", c.basis[i].label, d.label_vector(v)))
            .collect();
        lines.push(format!("  objects ({}) {}", objs.join(", "), parts.join(", ")));
        list.push(json!({ "object_map": objs, "xi": xi }));
    }
    Ok(Output::report(ctx.cli.format, true, lines, json!({ "count": all.len(), "elements": list })))
}

pub(super) fn adjunction_roundtrip(ctx: &Ctx, cpath: &PathBuf, dpath: &PathBuf) -> Result<Output, InputError> {
    let c = load_coalgebra(ctx, cpath)?;
    let d = load_dgcat(ctx, dpath)?;
    if c.field != d.field {
        return Err(InputError::Usage(format!("fields differ: {} and {}", c.field, d.field)));
    }
    let (ok, line, value) = match acceptance::bijection(&c, &d, ctx.cli.budget) {
        Ok(n) => (true, format!("{n} MC elements, cobar functors and bar maps, all round trips exact"), json!({ "count": n })),
        Err(e) => (false, format!("FAILED: {e}"), json!({ "witness": e })),
    };
    Ok(Output::report(ctx.cli.format, ok, vec![line], value))
}

pub(super) fn counit_check(ctx: &Ctx, path: &PathBuf) -> Result<Output, InputError> {
    let d = load_dgcat(ctx, path)?;
    let window = ctx.window((-3, 0));
    let r = counit(&d, ctx.bound(4), window)?;
    let names = d.objects();
    let mut lines = vec![format!(
        "bar bound {}, cobar bound {}, degrees {}..{}",
        r.bar_bound, r.cobar_bound, window.0, window.1
    )];
    let mut rows = Vec::new();
    for row in &r.rows {
        let (s, t) = (&names[row.source], &names[row.target]);
        lines.push(format!(
            "  {s} -> {t}  degree {:>3}  cobar-bar {}  target {}  {}",
            row.degree,
            row.cobar_dim,
            row.target_dim,
            if row.quasi_iso { "iso" } else { "NOT iso" }
        ));
        rows.push(json!({
            "source": s, "target": t, "degree": row.degree,
            "cobar_dim": row.cobar_dim, "target_dim": row.target_dim, "quasi_iso": row.quasi_iso,
        }));
    }
    lines.push(format!("complete: {}", r.complete));
    lines.push(format!("functor: {}", if r.functor.is_valid() { "valid" } else { "INVALID" }));
    lines.extend(failures_text(&r.functor));
    lines.push(format!("stabilized: {}", r.stabilized));
    Ok(Output::report(
        ctx.cli.format,
        r.is_valid(),
        lines,
        json!({
            "bar_bound": r.bar_bound,
            "cobar_bound": r.cobar_bound,
            "window": [window.0, window.1],
            "complete": r.complete,
            "functor_failures": failures_json(&r.functor),
            "rows": rows,
            "stabilized": r.stabilized,
        }),
    ))
}

pub(super) fn fg_adjoint(ctx: &Ctx, mc: &PathBuf, npath: &PathBuf, mpath: &PathBuf) -> Result<Output, InputError> {
    let (c, d, tau) = load_mc(ctx, mc)?;
    let n = match ctx.load(npath)? {
        Document::Comodule { coalgebra, comodule } if coalgebra == c => comodule,
        Document::Comodule { .. } => return Err(InputError::Usage("the comodule is over a different coalgebra".into())),
        other => return Err(InputError::Usage(format!("expected a comodule document, found {}", other.kind()))),
    };
    let m = match ctx.load(mpath)? {
        Document::Module { category, module } if category == d => module,
        Document::Module { .. } => return Err(InputError::Usage("the module is over a different category".into())),
        other => return Err(InputError::Usage(format!("expected a module document, found {}", other.kind()))),
    };
    let cert = fg_adjunction_check(&c, &d, &tau, &n, &m)?;
    let mut lines = Vec::new();
    let mut rows = Vec::new();
    for r in &cert.rows {
        lines.push(format!("  degree {:>3}  module maps {}  comodule maps {}", r.degree, r.module_side, r.comodule_side));
        rows.push(json!({ "degree": r.degree, "module_side": r.module_side, "comodule_side": r.comodule_side }));
    }
    lines.push(format!("certificate: {}", if cert.is_valid() { "valid" } else { "INVALID" }));
    lines.extend(failures_text(&cert.report));
    Ok(Output::report(ctx.cli.format, cert.is_valid(), lines, json!({ "rows": rows, "failures": failures_json(&cert.report) })))
}

pub(super) fn acceptance(ctx: &Ctx, only: Option<&[u64]>, skip_determinism: bool) -> Result<Output, InputError> {
    let seed = ctx.cli.seed;
    let ids: Vec<u64> = only.map(|o| o.to_vec()).unwrap_or_else(|| (1..=12).collect());
    if ids.iter().any(|i| !(1..=12).contains(i)) {
        return Err(InputError::Usage("criteria are numbered 1 to 12".into()));
    }
    let want_twelve = ids.contains(&12) && !skip_determinism;
    let body: Vec<u64> = ids.iter().copied().filter(|&i| i != 12).collect();
    let child = match (&ctx.exe, want_twelve) {
        (Some(exe), true) => {
            let list = body.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",");
            let mut cmd = Process::new(exe);
            cmd.args(["acceptance", "--format", "json", "--skip-determinism", "--seed", &seed.to_string()]);
            if !list.is_empty() {
                cmd.args(["--only", &list]);
            }
            Some(cmd.stdout(Stdio::piped()).stderr(Stdio::null()).spawn())
        }
        _ => None,
    };
    let mut outcomes = acceptance::run(seed, &body);
    if ids.contains(&12) {
        let twelve = match child {
            Some(Ok(p)) => match p.wait_with_output() {
                Ok(out) => acceptance::determinism(acceptance::to_json(seed, &outcomes).as_bytes(), &out.stdout),
                Err(e) => failed_twelve(format!("second run failed: {e}")),
            },
            Some(Err(e)) => failed_twelve(format!("cannot start a second run: {e}")),
            None => acceptance::run_one(seed, 12),
        };
        outcomes.push(twelve);
    }
    let ok = outcomes.iter().all(|o| o.status != Status::Fail);
    let stdout = match ctx.cli.format {
        Format::Text => acceptance::to_text(&outcomes),
        Format::Json => acceptance::to_json(seed, &outcomes),
    };
    Ok(Output { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() })
}

fn failed_twelve(detail: String) -> acceptance::Outcome {
    acceptance::Outcome { id: 12, name: acceptance::NAMES[11], status: Status::Fail, detail }
}
