use serde_json::{json, Map, Value};

use koszul_core::barcobar::MCElement;
use koszul_core::coalgebra::{CoalgebraMorphism, PointedCurvedCoalgebra};
use koszul_core::dgcat::Morphism;
use koszul_core::modcomod::{Comodule, Module, Side};
use koszul_core::simplicial::FiniteSimplicialSet;
use koszul_core::{DgCategory, Vector};

use super::{Document, SCHEMA};

fn vector(v: &Vector<usize>, label: impl Fn(usize) -> String) -> Value {
    Value::Object(v.iter().map(|(k, c)| (label(*k), Value::String(c.to_text()))).collect())
}

/// `{label: vector}`, zero entries omitted.
fn vectors(vs: &[Vector<usize>], row: impl Fn(usize) -> String, col: impl Fn(usize) -> String + Copy) -> Value {
    Value::Object(
        vs.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (row(i), vector(v, col)))
            .collect(),
    )
}

/// `{label: [[left, right, scalar], ...]}` with the triples sorted.
fn pairs(
    vs: &[Vector<(usize, usize)>],
    row: impl Fn(usize) -> String,
    left: impl Fn(usize) -> String,
    right: impl Fn(usize) -> String,
) -> Value {
    let mut out = Map::new();
    for (i, v) in vs.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        let mut terms: Vec<(String, String, String)> =
            v.iter().map(|((a, b), c)| (left(*a), right(*b), c.to_text())).collect();
        terms.sort();
        out.insert(row(i), terms.into_iter().map(|(a, b, c)| json!([a, b, c])).collect());
    }
    Value::Object(out)
}

fn cells(basis: &[Morphism], objects: &[String]) -> Value {
    basis
        .iter()
        .map(|m| {
            json!({
                "label": m.label,
                "degree": m.degree,
                "source": objects[m.source],
                "target": objects[m.target],
            })
        })
        .collect()
}

pub(super) fn dgcat_body(d: &DgCategory) -> Value {
    let objects = d.objects();
    let label = |i: usize| d.morphism(i).label.clone();
    let mut identities = Map::new();
    for (s, o) in objects.iter().enumerate() {
        if let Some(i) = d.identity(s) {
            identities.insert(o.clone(), Value::String(label(i)));
        }
    }
    let mut composition: Vec<(String, String, Value)> = Vec::new();
    for (x, m) in d.basis().iter().enumerate() {
        if d.is_identity(x) {
            continue;
        }
        for t in 0..objects.len() {
            for &y in d.hom(m.target, t) {
                if d.is_identity(y) {
                    continue;
                }
                let v = d.mu_basis(x, y);
                if !v.is_zero() {
                    composition.push((label(x), label(y), vector(&v, label)));
                }
            }
        }
    }
    composition.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    let differential: Vec<Vector<usize>> = (0..d.basis().len()).map(|i| d.differential(i).clone()).collect();
    let mut body = json!({
        "objects": objects,
        "morphisms": cells(d.basis(), objects),
        "identities": identities,
        "differential": vectors(&differential, label, label),
        "composition": composition.into_iter().map(|(a, b, v)| json!([a, b, v])).collect::<Vec<_>>(),
    });
    if let Some(t) = d.truncation() {
        body["truncation"] = json!({
            "bound": t.bound,
            "generators": t.generators.iter().map(|&(s, u, n)| json!({
                "source": objects[s],
                "target": objects[u],
                "degree": n,
            })).collect::<Vec<_>>(),
        });
    }
    body
}

pub(super) fn coalgebra_body(c: &PointedCurvedCoalgebra) -> Value {
    let label = |i: usize| c.basis[i].label.clone();
    json!({
        "objects": c.objects,
        "basis": cells(&c.basis, &c.objects),
        "coproduct": pairs(&c.coproduct, label, label, label),
        "differential": vectors(&c.differential, label, label),
        "curvature": vector(&c.curvature, label),
    })
}

fn sset_body(k: &FiniteSimplicialSet) -> Value {
    let simplices: Vec<Value> = k
        .simplices
        .iter()
        .zip(&k.faces)
        .map(|(s, faces)| {
            json!({
                "label": s.label,
                "dim": s.dim,
                "faces": faces.iter().map(|f| json!({
                    "base": k.simplices[f.base].label,
                    "word": f.word,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "simplices": simplices })
}

fn elements(labels: &[String], degrees: &[i32], objects: &[usize], names: &[String]) -> Value {
    (0..labels.len())
        .map(|i| json!({ "label": labels[i], "degree": degrees[i], "object": names[objects[i]] }))
        .collect()
}

fn comodule_body(c: &PointedCurvedCoalgebra, m: &Comodule) -> Value {
    let el = |i: usize| m.labels[i].clone();
    let cl = |i: usize| c.basis[i].label.clone();
    json!({
        "coalgebra": coalgebra_body(c),
        "side": match m.side { Side::Left => "left", Side::Right => "right" },
        "elements": elements(&m.labels, &m.degrees, &m.objects, &c.objects),
        "differential": vectors(&m.differential, el, el),
        "coaction": pairs(&m.coaction, el, el, cl),
    })
}

fn module_body(d: &DgCategory, m: &Module) -> Value {
    let el = |i: usize| m.labels[i].clone();
    let mut action = Map::new();
    for ((v, a), w) in &m.action {
        if w.is_zero() {
            continue;
        }
        let entry = action.entry(el(*v)).or_insert_with(|| Value::Object(Map::new()));
        entry[d.morphism(*a).label.as_str()] = vector(w, el);
    }
    json!({
        "category": dgcat_body(d),
        "elements": elements(&m.labels, &m.degrees, &m.objects, d.objects()),
        "differential": vectors(&m.differential, el, el),
        "action": action,
    })
}

fn object_map(map: &[usize], from: &[String], to: &[String]) -> Value {
    Value::Object(map.iter().enumerate().map(|(i, &j)| (from[i].clone(), Value::String(to[j].clone()))).collect())
}

fn mc_body(c: &PointedCurvedCoalgebra, d: &DgCategory, x: &MCElement) -> Value {
    json!({
        "coalgebra": coalgebra_body(c),
        "category": dgcat_body(d),
        "object_map": object_map(&x.object_map, &c.objects, d.objects()),
        "xi": vectors(&x.xi, |i| c.basis[i].label.clone(), |i| d.morphism(i).label.clone()),
    })
}

fn morphism_body(c: &PointedCurvedCoalgebra, e: &PointedCurvedCoalgebra, m: &CoalgebraMorphism) -> Value {
    let src = |i: usize| c.basis[i].label.clone();
    json!({
        "source": coalgebra_body(c),
        "target": coalgebra_body(e),
        "object_map": object_map(&m.object_map, &c.objects, &e.objects),
        "linear": vectors(&m.linear, src, |i| e.basis[i].label.clone()),
        "functional": vector(&m.functional, src),
    })
}

pub fn to_value(doc: &Document) -> Value {
    let body = match doc {
        Document::DgCat(d) => dgcat_body(d),
        Document::Coalgebra(c) => coalgebra_body(c),
        Document::SSet(k) => sset_body(k),
        Document::Comodule { coalgebra, comodule } => comodule_body(coalgebra, comodule),
        Document::Module { category, module } => module_body(category, module),
        Document::Mc { coalgebra, category, mc } => mc_body(coalgebra, category, mc),
        Document::Morphism { source, target, morphism } => morphism_body(source, target, morphism),
    };
    let mut out = json!({ "schema": SCHEMA, "kind": doc.kind(), "body": body });
    if let Some(f) = doc.field() {
        out["field"] = Value::String(f.to_string());
    }
    out
}

/// Canonical text: sorted keys, two-space indentation, trailing newline.
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(&to_value(doc)).expect("documents are plain JSON");
    s.push('\n');
    s
}
