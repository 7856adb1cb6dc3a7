use std::collections::BTreeMap;

use serde_json::Value;

use koszul_core::barcobar::MCElement;
use koszul_core::coalgebra::{CoalgebraMorphism, PointedCurvedCoalgebra};
use koszul_core::dgcat::{Morphism, Truncation};
use koszul_core::modcomod::{Comodule, Module, Side};
use koszul_core::simplicial::{DegenerateForm, FiniteSimplicialSet, Simplex};
use koszul_core::{DgCategory, Field, Scalar, Vector};

use super::{Document, ParseError, SCHEMA};

type Res<T> = Result<T, ParseError>;

fn escape(key: &str) -> String {
    key.replace('~', "~0").replace('/', "~1")
}

/// A JSON node together with its pointer.
#[derive(Clone, Copy)]
struct Node<'a> {
    value: &'a Value,
    path: &'a str,
}

struct Owned<'a> {
    value: &'a Value,
    path: String,
}

impl<'a> Owned<'a> {
    fn node(&self) -> Node<'_> {
        Node { value: self.value, path: &self.path }
    }
}

impl<'a> Node<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Res<T> {
        Err(ParseError { pointer: if self.path.is_empty() { "/".into() } else { self.path.into() }, message: message.into() })
    }

    fn get(&self, key: &str) -> Res<Owned<'a>> {
        match self.value.as_object() {
            None => self.err("expected an object"),
            Some(m) => match m.get(key) {
                Some(v) => Ok(Owned { value: v, path: format!("{}/{}", self.path, escape(key)) }),
                None => self.err(format!("missing key \"{key}\"")),
            },
        }
    }

    fn opt(&self, key: &str) -> Res<Option<Owned<'a>>> {
        match self.value.as_object() {
            None => self.err("expected an object"),
            Some(m) => Ok(m.get(key).map(|v| Owned { value: v, path: format!("{}/{}", self.path, escape(key)) })),
        }
    }

    fn items(&self) -> Res<Vec<Owned<'a>>> {
        match self.value.as_array() {
            None => self.err("expected an array"),
            Some(a) => Ok(a
                .iter()
                .enumerate()
                .map(|(i, v)| Owned { value: v, path: format!("{}/{i}", self.path) })
                .collect()),
        }
    }

    fn entries(&self) -> Res<Vec<(String, Owned<'a>)>> {
        match self.value.as_object() {
            None => self.err("expected an object"),
            Some(m) => Ok(m
                .iter()
                .map(|(k, v)| (k.clone(), Owned { value: v, path: format!("{}/{}", self.path, escape(k)) }))
                .collect()),
        }
    }

    fn str(&self) -> Res<&'a str> {
        match self.value.as_str() {
            Some(s) => Ok(s),
            None => self.err("expected a string"),
        }
    }

    fn int(&self) -> Res<i64> {
        match self.value.as_i64() {
            Some(n) => Ok(n),
            None => self.err("expected an integer"),
        }
    }

    fn degree(&self) -> Res<i32> {
        let n = self.int()?;
        i32::try_from(n).or_else(|_| self.err("degree out of range"))
    }

    fn count(&self) -> Res<usize> {
        let n = self.int()?;
        usize::try_from(n).or_else(|_| self.err("expected a non-negative integer"))
    }

    fn scalar(&self, field: Field) -> Res<Scalar> {
        let s = self.str()?;
        field.parse(s).or_else(|e| self.err(e.to_string()))
    }
}

/// Label lookup with duplicate detection.
struct Labels {
    index: BTreeMap<String, usize>,
}

impl Labels {
    fn new(labels: &[String], at: Node<'_>) -> Res<Labels> {
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return at.err(format!("duplicate label \"{l}\""));
            }
        }
        Ok(Labels { index })
    }

    fn find(&self, label: &str, at: Node<'_>) -> Res<usize> {
        match self.index.get(label) {
            Some(&i) => Ok(i),
            None => at.err(format!("unknown label \"{label}\"")),
        }
    }
}

fn strings(n: Node<'_>) -> Res<Vec<String>> {
    n.items()?.iter().map(|o| o.node().str().map(String::from)).collect()
}

fn cells(n: Node<'_>, objects: &Labels) -> Res<Vec<Morphism>> {
    n.items()?
        .iter()
        .map(|o| {
            let c = o.node();
            let src = c.get("source")?;
            let tgt = c.get("target")?;
            Ok(Morphism {
                label: c.get("label")?.node().str()?.into(),
                degree: c.get("degree")?.node().degree()?,
                source: objects.find(src.node().str()?, src.node())?,
                target: objects.find(tgt.node().str()?, tgt.node())?,
            })
        })
        .collect()
}

fn vector(n: Node<'_>, field: Field, keys: &Labels) -> Res<Vector<usize>> {
    let mut v = Vector::zero();
    for (k, o) in n.entries()? {
        v.add_term(keys.find(&k, o.node())?, o.node().scalar(field)?);
    }
    Ok(v)
}

fn vectors(n: Node<'_>, field: Field, rows: &Labels, len: usize, cols: &Labels) -> Res<Vec<Vector<usize>>> {
    let mut out = vec![Vector::zero(); len];
    for (k, o) in n.entries()? {
        out[rows.find(&k, o.node())?] = vector(o.node(), field, cols)?;
    }
    Ok(out)
}

fn pairs(n: Node<'_>, field: Field, rows: &Labels, len: usize, left: &Labels, right: &Labels) -> Res<Vec<Vector<(usize, usize)>>> {
    let mut out = vec![Vector::zero(); len];
    for (k, o) in n.entries()? {
        let row = rows.find(&k, o.node())?;
        for t in o.node().items()? {
            let parts = t.node().items()?;
            if parts.len() != 3 {
                return t.node().err("expected [left, right, scalar]");
            }
            let a = left.find(parts[0].node().str()?, parts[0].node())?;
            let b = right.find(parts[1].node().str()?, parts[1].node())?;
            out[row].add_term((a, b), parts[2].node().scalar(field)?);
        }
    }
    Ok(out)
}

fn core_err<T>(at: Node<'_>, e: koszul_core::Error) -> Res<T> {
    at.err(e.to_string())
}

fn dgcat(n: Node<'_>, field: Field) -> Res<DgCategory> {
    let objects = strings(n.get("objects")?.node())?;
    let obj = Labels::new(&objects, n)?;
    let mor = n.get("morphisms")?;
    let basis = cells(mor.node(), &obj)?;
    let names: Vec<String> = basis.iter().map(|m| m.label.clone()).collect();
    let lab = Labels::new(&names, mor.node())?;
    let mut identities = vec![None; objects.len()];
    let ids = n.get("identities")?;
    for (o, v) in ids.node().entries()? {
        let s = obj.find(&o, v.node())?;
        identities[s] = Some(lab.find(v.node().str()?, v.node())?);
    }
    let differential = vectors(n.get("differential")?.node(), field, &lab, basis.len(), &lab)?;
    let mut products = Vec::new();
    for t in n.get("composition")?.node().items()? {
        let parts = t.node().items()?;
        if parts.len() != 3 {
            return t.node().err("expected [first, second, vector]");
        }
        let a = lab.find(parts[0].node().str()?, parts[0].node())?;
        let b = lab.find(parts[1].node().str()?, parts[1].node())?;
        products.push(((a, b), vector(parts[2].node(), field, &lab)?));
    }
    let d = DgCategory::from_table(field, objects, basis, identities, differential, products).or_else(|e| core_err(n, e))?;
    match n.opt("truncation")? {
        None => Ok(d),
        Some(t) => {
            let t = t.node();
            let bound = t.get("bound")?.node().count()?;
            let mut generators = Vec::new();
            for g in t.get("generators")?.node().items()? {
                let g = g.node();
                let s = g.get("source")?;
                let u = g.get("target")?;
                generators.push((
                    obj.find(s.node().str()?, s.node())?,
                    obj.find(u.node().str()?, u.node())?,
                    g.get("degree")?.node().degree()?,
                ));
            }
            let objects = d.objects().len();
            Ok(d.with_truncation(Truncation::for_generators(bound, generators, objects)))
        }
    }
}

fn coalgebra(n: Node<'_>, field: Field) -> Res<PointedCurvedCoalgebra> {
    let objects = strings(n.get("objects")?.node())?;
    let obj = Labels::new(&objects, n)?;
    let b = n.get("basis")?;
    let basis = cells(b.node(), &obj)?;
    let names: Vec<String> = basis.iter().map(|m| m.label.clone()).collect();
    let lab = Labels::new(&names, b.node())?;
    let len = basis.len();
    let coproduct = pairs(n.get("coproduct")?.node(), field, &lab, len, &lab, &lab)?;
    let differential = vectors(n.get("differential")?.node(), field, &lab, len, &lab)?;
    let curvature = vector(n.get("curvature")?.node(), field, &lab)?;
    PointedCurvedCoalgebra::new(field, objects, basis, coproduct, differential, curvature).or_else(|e| core_err(n, e))
}

fn sset(n: Node<'_>) -> Res<FiniteSimplicialSet> {
    let list = n.get("simplices")?;
    let items = list.node().items()?;
    let mut simplices = Vec::new();
    for o in &items {
        let c = o.node();
        simplices.push(Simplex { label: c.get("label")?.node().str()?.into(), dim: c.get("dim")?.node().count()? });
    }
    let names: Vec<String> = simplices.iter().map(|s| s.label.clone()).collect();
    let lab = Labels::new(&names, list.node())?;
    let mut faces = Vec::new();
    for o in &items {
        let mut row = Vec::new();
        for f in o.node().get("faces")?.node().items()? {
            let base = f.node().get("base")?;
            let word_node = f.node().get("word")?;
            let word = word_node.node().items()?.iter().map(|w| w.node().count()).collect::<Res<Vec<usize>>>()?;
            if word.windows(2).any(|w| w[0] <= w[1]) {
                return word_node.node().err("degeneracy word must be strictly decreasing");
            }
            row.push(DegenerateForm { base: lab.find(base.node().str()?, base.node())?, word });
        }
        faces.push(row);
    }
    FiniteSimplicialSet::new(simplices, faces).or_else(|e| core_err(n, e))
}

struct Elements {
    labels: Vec<String>,
    degrees: Vec<i32>,
    objects: Vec<usize>,
    index: Labels,
}

fn elements(n: Node<'_>, obj: &Labels) -> Res<Elements> {
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut objects = Vec::new();
    for o in n.items()? {
        let c = o.node();
        labels.push(c.get("label")?.node().str()?.to_string());
        degrees.push(c.get("degree")?.node().degree()?);
        let x = c.get("object")?;
        objects.push(obj.find(x.node().str()?, x.node())?);
    }
    let index = Labels::new(&labels, n)?;
    Ok(Elements { labels, degrees, objects, index })
}

fn comodule(n: Node<'_>, field: Field) -> Res<(PointedCurvedCoalgebra, Comodule)> {
    let c = coalgebra(n.get("coalgebra")?.node(), field)?;
    let obj = Labels::new(&c.objects, n)?;
    let names: Vec<String> = c.basis.iter().map(|m| m.label.clone()).collect();
    let lab = Labels::new(&names, n)?;
    let side_node = n.get("side")?;
    let side = match side_node.node().str()? {
        "left" => Side::Left,
        "right" => Side::Right,
        other => return side_node.node().err(format!("side must be left or right, got {other}")),
    };
    let e = elements(n.get("elements")?.node(), &obj)?;
    let len = e.labels.len();
    let differential = vectors(n.get("differential")?.node(), field, &e.index, len, &e.index)?;
    let coaction = pairs(n.get("coaction")?.node(), field, &e.index, len, &e.index, &lab)?;
    let m = Comodule { field, side, labels: e.labels, degrees: e.degrees, objects: e.objects, differential, coaction };
    Ok((c, m))
}

fn module(n: Node<'_>, field: Field) -> Res<(DgCategory, Module)> {
    let d = dgcat(n.get("category")?.node(), field)?;
    let obj = Labels::new(d.objects(), n)?;
    let names: Vec<String> = d.basis().iter().map(|m| m.label.clone()).collect();
    let lab = Labels::new(&names, n)?;
    let e = elements(n.get("elements")?.node(), &obj)?;
    let len = e.labels.len();
    let differential = vectors(n.get("differential")?.node(), field, &e.index, len, &e.index)?;
    let mut action = BTreeMap::new();
    for (v, o) in n.get("action")?.node().entries()? {
        let i = e.index.find(&v, o.node())?;
        for (a, w) in o.node().entries()? {
            let k = lab.find(&a, w.node())?;
            action.insert((i, k), vector(w.node(), field, &e.index)?);
        }
    }
    let m = Module { field, labels: e.labels, degrees: e.degrees, objects: e.objects, differential, action };
    Ok((d, m))
}

fn object_map(n: Node<'_>, from: &[String], to: &[String]) -> Res<Vec<usize>> {
    let src = Labels::new(from, n)?;
    let tgt = Labels::new(to, n)?;
    let mut out = vec![None; from.len()];
    for (k, o) in n.entries()? {
        out[src.find(&k, o.node())?] = Some(tgt.find(o.node().str()?, o.node())?);
    }
    out.into_iter()
        .enumerate()
        .map(|(i, x)| x.map_or_else(|| n.err(format!("object \"{}\" is not mapped", from[i])), Ok))
        .collect()
}

fn mc(n: Node<'_>, field: Field) -> Res<(PointedCurvedCoalgebra, DgCategory, MCElement)> {
    let c = coalgebra(n.get("coalgebra")?.node(), field)?;
    let d = dgcat(n.get("category")?.node(), field)?;
    let object_map = object_map(n.get("object_map")?.node(), &c.objects, d.objects())?;
    let cl: Vec<String> = c.basis.iter().map(|m| m.label.clone()).collect();
    let dl: Vec<String> = d.basis().iter().map(|m| m.label.clone()).collect();
    let xi = vectors(n.get("xi")?.node(), field, &Labels::new(&cl, n)?, cl.len(), &Labels::new(&dl, n)?)?;
    Ok((c, d, MCElement { object_map, xi }))
}

fn morphism(n: Node<'_>, field: Field) -> Res<(PointedCurvedCoalgebra, PointedCurvedCoalgebra, CoalgebraMorphism)> {
    let c = coalgebra(n.get("source")?.node(), field)?;
    let e = coalgebra(n.get("target")?.node(), field)?;
    let object_map = object_map(n.get("object_map")?.node(), &c.objects, &e.objects)?;
    let cl: Vec<String> = c.basis.iter().map(|m| m.label.clone()).collect();
    let el: Vec<String> = e.basis.iter().map(|m| m.label.clone()).collect();
    let src = Labels::new(&cl, n)?;
    let linear = vectors(n.get("linear")?.node(), field, &src, cl.len(), &Labels::new(&el, n)?)?;
    let functional = vector(n.get("functional")?.node(), field, &src)?;
    Ok((c, e, CoalgebraMorphism { object_map, linear, functional }))
}

/// Reads a document from a JSON value; `default_field` applies when the document names none.
pub fn parse_value(v: &Value, default_field: Option<Field>) -> Res<Document> {
    let root = Node { value: v, path: "" };
    let schema = root.get("schema")?;
    if schema.node().value.as_u64() != Some(SCHEMA) {
        return schema.node().err(format!("unsupported schema, expected {SCHEMA}"));
    }
    let kind_node = root.get("kind")?;
    let kind = kind_node.node().str()?;
    let body = root.get("body")?;
    let body = body.node();
    let field = match root.opt("field")? {
        Some(f) => {
            let text = f.node().str()?;
            Some(text.parse::<Field>().or_else(|e| f.node().err(e.to_string()))?)
        }
        None => default_field,
    };
    if kind == "sset" {
        return Ok(Document::SSet(sset(body)?));
    }
    let Some(field) = field else {
        return root.err("missing key \"field\"");
    };
    Ok(match kind {
        "dgcat" => Document::DgCat(dgcat(body, field)?),
        "coalgebra" => Document::Coalgebra(coalgebra(body, field)?),
        "comodule" => {
            let (coalgebra, comodule) = comodule(body, field)?;
            Document::Comodule { coalgebra, comodule }
        }
        "module" => {
            let (category, module) = module(body, field)?;
            Document::Module { category, module }
        }
        "mc" => {
            let (coalgebra, category, mc) = mc(body, field)?;
            Document::Mc { coalgebra, category, mc }
        }
        "morphism" => {
            let (source, target, morphism) = morphism(body, field)?;
            Document::Morphism { source, target, morphism }
        }
        other => return kind_node.node().err(format!("unknown kind \"{other}\"")),
    })
}

pub fn parse(text: &str, default_field: Option<Field>) -> Res<Document> {
    let v: Value = serde_json::from_str(text).map_err(|e| ParseError { pointer: "/".into(), message: e.to_string() })?;
    parse_value(&v, default_field)
}
