//! Seeded random instances and finite families for the property suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use koszul_core::coalgebra::{dualize, dualize_inverse, validate_pointed_curved_coalgebra, PointedCurvedCoalgebra};
use koszul_core::curved::{twist, AElem};
use koszul_core::dgcat::{validate_dg_category, Morphism};
use koszul_core::linalg::Echelon;
use koszul_core::modcomod::{validate_comodule, validate_module, Comodule, Module, Side};
use koszul_core::{DgCategory, Field, Scalar, Vector};

/// Independent deterministic stream `stream` of the run seeded by `seed`.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Uniform over `F_p`, or a small integer over `Q`.
pub fn scalar(rng: &mut impl Rng, f: Field) -> Scalar {
    match f {
        Field::Prime(p) => f.int(rng.gen_range(0..p as i64)),
        Field::Rational => f.int(rng.gen_range(-2..=2)),
    }
}

pub fn nonzero_scalar(rng: &mut impl Rng, f: Field) -> Scalar {
    loop {
        let x = scalar(rng, f);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A uniformly random element of the span of `basis`.
fn combination(rng: &mut impl Rng, f: Field, basis: &[Vector<usize>]) -> Vector<usize> {
    let mut v = Vector::zero();
    for b in basis {
        v.add_scaled(b, &scalar(rng, f));
    }
    v
}

/// Random degree-one square-zero map on the span of `cells`, as `(from, to)` entries.
fn random_differential(rng: &mut impl Rng, f: Field, degrees: &[i32], cells: &[usize]) -> BTreeMap<usize, Vector<usize>> {
    for _ in 0..20 {
        let mut d: BTreeMap<usize, Vector<usize>> = BTreeMap::new();
        for &i in cells {
            for &j in cells {
                if degrees[j] == degrees[i] + 1 && rng.gen_bool(0.5) {
                    d.entry(i).or_default().add_term(j, scalar(rng, f));
                }
            }
        }
        let square_zero = cells.iter().all(|i| {
            let v = d.get(i).cloned().unwrap_or_default();
            v.map_linear(|j| d.get(j).cloned().unwrap_or_default()).is_zero()
        });
        if square_zero {
            return d;
        }
    }
    BTreeMap::new()
}

/// A random valid dg category with at most three objects and hom dimensions at most three.
///
/// Objects are ordered; non-identity morphisms go forward, plus optional square-zero loops.
/// Compositions are a random solution of the Leibniz equations.
pub fn random_dgcat(rng: &mut impl Rng, f: Field) -> DgCategory {
    let n = rng.gen_range(1..=3);
    let objects: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut basis = Vec::new();
    let mut identities = Vec::new();
    for s in 0..n {
        identities.push(Some(basis.len()));
        basis.push(Morphism { label: format!("id_{}", objects[s]), degree: 0, source: s, target: s });
    }
    let mut loops = Vec::new();
    for s in 0..n {
        if rng.gen_bool(0.25) {
            loops.push(basis.len());
            basis.push(Morphism { label: format!("e{}", s + 1), degree: rng.gen_range(-1..=1), source: s, target: s });
        }
    }
    for s in 0..n {
        for t in s + 1..n {
            for i in 0..rng.gen_range(0..=3) {
                basis.push(Morphism {
                    label: format!("m{}{}{}", s + 1, t + 1, (b'a' + i) as char),
                    degree: rng.gen_range(-2..=1),
                    source: s,
                    target: t,
                });
            }
        }
    }
    let degrees: Vec<i32> = basis.iter().map(|m| m.degree).collect();
    let hom = |s: usize, t: usize| -> Vec<usize> {
        (0..basis.len()).filter(|&i| basis[i].source == s && basis[i].target == t && identities[s] != Some(i)).collect()
    };
    let mut differential = vec![Vector::zero(); basis.len()];
    for s in 0..n {
        for t in s + 1..n {
            for (i, v) in random_differential(rng, f, &degrees, &hom(s, t)) {
                differential[i] = v;
            }
        }
    }
    let mut products = Vec::new();
    for s in 0..n {
        for u in s + 1..n {
            for t in u + 1..n {
                let (left, right, out) = (hom(s, u), hom(u, t), hom(s, t));
                let mut unknowns = Vec::new();
                for &a in &left {
                    for &b in &right {
                        for &c in &out {
                            if degrees[c] == degrees[a] + degrees[b] {
                                unknowns.push((a, b, c));
                            }
                        }
                    }
                }
                let pos: BTreeMap<(usize, usize, usize), usize> = unknowns.iter().enumerate().map(|(i, k)| (*k, i)).collect();
                let mut rows: BTreeMap<(usize, usize, usize), Vector<usize>> = BTreeMap::new();
                for &a in &left {
                    for &b in &right {
                        for &c in &out {
                            for (c2, x) in &differential[c] {
                                if let Some(&p) = pos.get(&(a, b, c)) {
                                    rows.entry((a, b, *c2)).or_default().add_term(p, x.clone());
                                }
                            }
                            for (a2, x) in &differential[a] {
                                if let Some(&p) = pos.get(&(*a2, b, c)) {
                                    rows.entry((a, b, c)).or_default().add_term(p, -x);
                                }
                            }
                            for (b2, x) in &differential[b] {
                                if let Some(&p) = pos.get(&(a, *b2, c)) {
                                    rows.entry((a, b, c)).or_default().add_term(p, -(x * &f.sign(degrees[a] as i64)));
                                }
                            }
                        }
                    }
                }
                let kernel = Echelon::new(f, unknowns.len(), rows.into_values().collect()).kernel(f);
                let mu = combination(rng, f, &kernel);
                let mut table: BTreeMap<(usize, usize), Vector<usize>> = BTreeMap::new();
                for (p, x) in &mu {
                    let (a, b, c) = unknowns[*p];
                    table.entry((a, b)).or_default().add_term(c, x.clone());
                }
                products.extend(table);
            }
        }
    }
    let d = DgCategory::from_table(f, objects, basis, identities, differential, products).expect("well-formed table");
    debug_assert!(validate_dg_category(&d).is_valid(), "{}", validate_dg_category(&d));
    d
}

/// Component- and degree-compatible pairs `(i, j)` with `|i| + |j| = degree` from `s` to `t`.
fn splittings(basis: &[Morphism], prims: &[usize], s: usize, t: usize, degree: i32) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for &i in prims {
        for &j in prims {
            let (a, b) = (&basis[i], &basis[j]);
            if a.source == s && a.target == b.source && b.target == t && a.degree + b.degree == degree {
                out.push((i, j));
            }
        }
    }
    out
}

/// A random valid pointed curved coalgebra: at most two objects, `dim C̄ ≤ 4`,
/// degrees in `[−3, 3]`.
///
/// Primitives plus elements with quadratic coproduct, a rejection-sampled differential and
/// curvature, and then a twist by a random degree-one functional on loops.
pub fn random_coalgebra(rng: &mut impl Rng, f: Field) -> PointedCurvedCoalgebra {
    loop {
        if let Some(c) = try_coalgebra(rng, f) {
            return c;
        }
    }
}

fn try_coalgebra(rng: &mut impl Rng, f: Field) -> Option<PointedCurvedCoalgebra> {
    let n = rng.gen_range(1..=2);
    let objects: Vec<String> = ["p", "q"][..n].iter().map(|s| s.to_string()).collect();
    let dim = rng.gen_range(0..=4);
    let nprim = if dim == 0 { 0 } else { rng.gen_range(1..=dim) };
    let mut basis = Vec::new();
    for i in 0..nprim {
        basis.push(Morphism {
            label: format!("x{i}"),
            degree: if rng.gen_bool(0.5) { -1 } else { rng.gen_range(-3..=3) },
            source: rng.gen_range(0..n),
            target: rng.gen_range(0..n),
        });
    }
    let prims: Vec<usize> = (0..nprim).collect();
    let mut coproduct = vec![Vector::zero(); nprim];
    for i in nprim..dim {
        let a = *prims.choose(rng)?;
        let b = **prims.iter().filter(|&&j| basis[j].source == basis[a].target).collect::<Vec<_>>().choose(rng)?;
        let (s, t, deg) = (basis[a].source, basis[b].target, basis[a].degree + basis[b].degree);
        if !(-3..=3).contains(&deg) {
            return None;
        }
        let mut v = Vector::zero();
        for (p, q) in splittings(&basis, &prims, s, t, deg) {
            if (p, q) == (a, b) {
                v.add_term((p, q), nonzero_scalar(rng, f));
            } else if rng.gen_bool(0.3) {
                v.add_term((p, q), scalar(rng, f));
            }
        }
        basis.push(Morphism { label: format!("y{}", i - nprim), degree: deg, source: s, target: t });
        coproduct.push(v);
    }
    let mut differential = vec![Vector::zero(); dim];
    for i in 0..dim {
        for j in 0..dim {
            let (a, b) = (&basis[i], &basis[j]);
            if (a.source, a.target, a.degree + 1) == (b.source, b.target, b.degree) && rng.gen_bool(0.3) {
                differential[i].add_term(j, scalar(rng, f));
            }
        }
    }
    let mut curvature = Vector::zero();
    for (i, b) in basis.iter().enumerate() {
        if b.degree == -2 && b.source == b.target && rng.gen_bool(0.3) {
            curvature.add_term(i, scalar(rng, f));
        }
    }
    let c = PointedCurvedCoalgebra::new(f, objects, basis, coproduct, differential, curvature).ok()?;
    if !validate_pointed_curved_coalgebra(&c).is_valid() {
        return None;
    }
    let loops: Vec<usize> = (0..c.dim()).filter(|&i| c.basis[i].degree == -1 && c.basis[i].source == c.basis[i].target).collect();
    if loops.is_empty() || rng.gen_bool(0.3) {
        return Some(c);
    }
    let mut b = Vector::zero();
    for &i in &loops {
        b.add_term(AElem::Gen(i), scalar(rng, f));
    }
    let twisted = dualize_inverse(&twist(&dualize(&c), &b)).ok()?;
    validate_pointed_curved_coalgebra(&twisted).is_valid().then_some(twisted)
}

/// Every valid pointed curved coalgebra over `F_2` with at most two objects,
/// `dim C̄ ≤ max_dim` and degrees in `[−2, 0]`, with basis listed in sorted shape order.
pub fn coalgebra_family_f2(max_dim: usize) -> Vec<PointedCurvedCoalgebra> {
    let f = Field::Prime(2);
    let mut out = Vec::new();
    for n in 1..=2usize {
        let objects: Vec<String> = ["p", "q"][..n].iter().map(|s| s.to_string()).collect();
        let mut shapes = Vec::new();
        for s in 0..n {
            for t in 0..n {
                for deg in -2..=0 {
                    shapes.push((s, t, deg));
                }
            }
        }
        for dim in 0..=max_dim {
            for choice in multisets(shapes.len(), dim) {
                let basis: Vec<Morphism> = choice
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| {
                        let (s, t, deg) = shapes[k];
                        Morphism { label: format!("c{i}"), degree: deg, source: s, target: t }
                    })
                    .collect();
                out.extend(structures_f2(f, &objects, &basis));
            }
        }
    }
    out
}

fn multisets(kinds: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..size {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let lo = p.last().copied().unwrap_or(0);
                (lo..kinds).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

fn structures_f2(f: Field, objects: &[String], basis: &[Morphism]) -> Vec<PointedCurvedCoalgebra> {
    #[derive(Clone, Copy)]
    enum Slot {
        Co(usize, usize, usize),
        D(usize, usize),
        H(usize),
    }
    let dim = basis.len();
    let mut slots = Vec::new();
    for c in 0..dim {
        for (p, q) in splittings(basis, &(0..dim).collect::<Vec<_>>(), basis[c].source, basis[c].target, basis[c].degree) {
            if p != c && q != c {
                slots.push(Slot::Co(c, p, q));
            }
        }
        for j in 0..dim {
            let (a, b) = (&basis[c], &basis[j]);
            if (a.source, a.target, a.degree + 1) == (b.source, b.target, b.degree) {
                slots.push(Slot::D(c, j));
            }
        }
        if basis[c].degree == -2 && basis[c].source == basis[c].target {
            slots.push(Slot::H(c));
        }
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << slots.len()) {
        let mut coproduct = vec![Vector::zero(); dim];
        let mut differential = vec![Vector::zero(); dim];
        let mut curvature = Vector::zero();
        for (k, slot) in slots.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            match *slot {
                Slot::Co(c, p, q) => coproduct[c].add_term((p, q), f.one()),
                Slot::D(c, j) => differential[c].add_term(j, f.one()),
                Slot::H(c) => curvature.add_term(c, f.one()),
            }
        }
        let Ok(c) = PointedCurvedCoalgebra::new(f, objects.to_vec(), basis.to_vec(), coproduct, differential, curvature) else {
            continue;
        };
        if c.conilpotence_degree().is_some() && validate_pointed_curved_coalgebra(&c).is_valid() {
            out.push(c);
        }
    }
    out
}

/// A module concentrated in the given cells, with only identities acting.
///
/// Valid for categories in which no product of non-identity morphisms has an identity component.
pub fn complex_module(d: &DgCategory, cells: &[(usize, i32)], differential: Vec<Vector<usize>>) -> Module {
    let f = d.field;
    let mut action = BTreeMap::new();
    for (i, &(s, _)) in cells.iter().enumerate() {
        if let Some(id) = d.identity(s) {
            action.insert((i, id), Vector::basis(i, f.one()));
        }
    }
    Module {
        field: f,
        labels: (0..cells.len()).map(|i| format!("v{i}")).collect(),
        degrees: cells.iter().map(|c| c.1).collect(),
        objects: cells.iter().map(|c| c.0).collect(),
        differential,
        action,
    }
}

/// A random module of dimension at most `max_dim`: a representable, a shift of one,
/// or a complex with only identities acting.
pub fn random_module(rng: &mut impl Rng, d: &DgCategory, max_dim: usize) -> Module {
    let f = d.field;
    let n = d.objects().len();
    loop {
        let m = match rng.gen_range(0..3) {
            0 | 1 => {
                let x = rng.gen_range(0..n);
                let rep = koszul_core::modcomod::representable(d, x);
                if rng.gen_bool(0.5) { koszul_core::modcomod::shift(&rep, rng.gen_range(-1..=1)) } else { rep }
            }
            _ => {
                let k = rng.gen_range(1..=max_dim);
                let cells: Vec<(usize, i32)> = (0..k).map(|_| (rng.gen_range(0..n), rng.gen_range(-2..=1))).collect();
                let degrees: Vec<i32> = cells.iter().map(|c| c.1).collect();
                let same: Vec<usize> = (0..k).collect();
                let raw = random_differential(rng, f, &degrees, &same);
                let differential = (0..k)
                    .map(|i| raw.get(&i).cloned().unwrap_or_default().filter(|j| cells[*j].0 == cells[i].0))
                    .collect();
                complex_module(d, &cells, differential)
            }
        };
        if m.dim() <= max_dim && validate_module(d, &m).is_valid() {
            return m;
        }
    }
}

/// A random right comodule of dimension at most `max_dim`, rejection-sampled.
pub fn random_comodule(rng: &mut impl Rng, c: &PointedCurvedCoalgebra, max_dim: usize) -> Comodule {
    let f = c.field;
    let n = c.objects.len();
    loop {
        let k = rng.gen_range(1..=max_dim);
        let degrees: Vec<i32> = (0..k).map(|_| rng.gen_range(-2..=1)).collect();
        let objects: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let mut differential = vec![Vector::zero(); k];
        let mut coaction = vec![Vector::zero(); k];
        for i in 0..k {
            for j in 0..k {
                if objects[i] == objects[j] && degrees[j] == degrees[i] + 1 && rng.gen_bool(0.4) {
                    differential[i].add_term(j, scalar(rng, f));
                }
                for (b, cb) in c.basis.iter().enumerate() {
                    let fits = cb.source == objects[j] && cb.target == objects[i] && degrees[j] + cb.degree == degrees[i];
                    if fits && rng.gen_bool(0.5) {
                        coaction[i].add_term((j, b), scalar(rng, f));
                    }
                }
            }
        }
        let m = Comodule {
            field: f,
            side: Side::Right,
            labels: (0..k).map(|i| format!("n{i}")).collect(),
            degrees,
            objects,
            differential,
            coaction,
        };
        if validate_comodule(c, &m).is_valid() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use koszul_core::barcobar::cobar;

    #[test]
    fn random_categories_validate() {
        let mut r = rng(7, 0);
        for f in [Field::Prime(2), Field::Prime(5), Field::Rational] {
            for _ in 0..30 {
                let d = random_dgcat(&mut r, f);
                let rep = validate_dg_category(&d);
                assert!(rep.is_valid(), "{rep}");
                for s in 0..d.objects().len() {
                    for t in 0..d.objects().len() {
                        assert!(d.hom(s, t).len() <= 3);
                    }
                }
            }
        }
    }

    #[test]
    fn random_coalgebras_are_varied() {
        let mut r = rng(7, 1);
        let mut curved = 0;
        let mut with_d = 0;
        for _ in 0..100 {
            let c = random_coalgebra(&mut r, Field::Prime(5));
            assert!(c.dim() <= 4 && c.objects.len() <= 2);
            assert!(c.basis.iter().all(|b| (-3..=3).contains(&b.degree)));
            curved += usize::from(c.is_curved());
            with_d += usize::from(c.differential.iter().any(|v| !v.is_zero()));
            let om = cobar(&c, 3);
            assert!(validate_dg_category(&om).is_valid());
        }
        assert!(curved > 5 && with_d > 5, "curved {curved}, with d {with_d}");
    }

    #[test]
    fn f2_family_contains_curved_members() {
        let fam = coalgebra_family_f2(2);
        assert!(fam.iter().any(|c| c.is_curved()));
        assert!(fam.iter().any(|c| c.coproduct.iter().any(|v| !v.is_zero())));
        assert!(fam.len() > 50);
    }

    #[test]
    fn random_comodules_and_modules_validate() {
        let f = Field::Prime(5);
        let mut r = rng(7, 2);
        for _ in 0..20 {
            let d = random_dgcat(&mut r, f);
            let c = koszul_core::barcobar::bar(&d, 2).unwrap().coalgebra;
            assert!(validate_comodule(&c, &random_comodule(&mut r, &c, 3)).is_valid());
            assert!(validate_module(&d, &random_module(&mut r, &d, 3)).is_valid());
        }
    }
}
