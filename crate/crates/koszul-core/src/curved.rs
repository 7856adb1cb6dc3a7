//! Curved algebras with a complete set of orthogonal idempotents, their morphisms,
//! twisting, and Maurer–Cartan elements.
//!
//! The product is written in path order: for `x ∈ e_s A e_t` and `y ∈ e_t A e_u`,
//! `x·y ∈ e_s A e_u`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dgcat::{render, Morphism};
use crate::error::{Error, Report};
use crate::scalar::{Field, Scalar};
use crate::uncurve::{EtaMode, HBound, Uncurving};
use crate::vector::Vector;

/// Basis element of a curved algebra: an idempotent `e_s` or a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AElem {
    Idem(usize),
    Gen(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurvedAlgebra {
    pub field: Field,
    pub objects: Vec<String>,
    pub gens: Vec<Morphism>,
    products: BTreeMap<(usize, usize), Vector<AElem>>,
    d_idem: Vec<Vector<AElem>>,
    d_gen: Vec<Vector<AElem>>,
    pub curvature: Vector<AElem>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

impl CurvedAlgebra {
    /// Products are given on generator pairs; idempotent products are structural.
    pub fn new(
        field: Field,
        objects: Vec<String>,
        gens: Vec<Morphism>,
        products: Vec<((usize, usize), Vector<AElem>)>,
        d_idem: Vec<Vector<AElem>>,
        d_gen: Vec<Vector<AElem>>,
        curvature: Vector<AElem>,
    ) -> Result<CurvedAlgebra, Error> {
        let (no, ng) = (objects.len(), gens.len());
        if d_idem.len() != no || d_gen.len() != ng {
            return Err(Error::IllFormed("differential length".into()));
        }
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !seen.insert(o.clone()) {
                return Err(Error::DuplicateLabel(o.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for g in &gens {
            if g.source >= no || g.target >= no {
                return Err(Error::IllFormed(format!("{} has an unknown endpoint", g.label)));
            }
            if !seen.insert(g.label.clone()) {
                return Err(Error::DuplicateLabel(g.label.clone()));
            }
        }
        let ok = |v: &Vector<AElem>| {
            v.keys().all(|k| match k {
                AElem::Idem(s) => *s < no,
                AElem::Gen(i) => *i < ng,
            })
        };
        if !d_idem.iter().all(ok) || !d_gen.iter().all(ok) || !ok(&curvature) {
            return Err(Error::IllFormed("index out of range".into()));
        }
        let mut table = BTreeMap::new();
        for ((a, b), v) in products {
            if a >= ng || b >= ng || !ok(&v) {
                return Err(Error::IllFormed("product index".into()));
            }
            if !v.is_zero() {
                table.insert((a, b), v);
            }
        }
        let mut right = vec![Vec::new(); ng];
        let mut left = vec![Vec::new(); ng];
        for &(a, b) in table.keys() {
            right[a].push(b);
            left[b].push(a);
        }
        Ok(CurvedAlgebra {
            field,
            objects,
            gens,
            products: table,
            d_idem,
            d_gen,
            curvature,
            right,
            left,
        })
    }

    pub fn degree(&self, a: AElem) -> i32 {
        match a {
            AElem::Idem(_) => 0,
            AElem::Gen(i) => self.gens[i].degree,
        }
    }

    pub fn source(&self, a: AElem) -> usize {
        match a {
            AElem::Idem(s) => s,
            AElem::Gen(i) => self.gens[i].source,
        }
    }

    pub fn target(&self, a: AElem) -> usize {
        match a {
            AElem::Idem(s) => s,
            AElem::Gen(i) => self.gens[i].target,
        }
    }

    pub fn label(&self, a: AElem) -> String {
        match a {
            AElem::Idem(s) => self.objects[s].clone(),
            AElem::Gen(i) => self.gens[i].label.clone(),
        }
    }

    pub fn gen_index(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.label == label)
    }

    pub fn products(&self) -> &BTreeMap<(usize, usize), Vector<AElem>> {
        &self.products
    }

    /// Generators `y` with `x·y ≠ 0`.
    pub fn right_partners(&self, x: usize) -> &[usize] {
        &self.right[x]
    }

    pub fn left_partners(&self, y: usize) -> &[usize] {
        &self.left[y]
    }

    pub fn basis(&self) -> Vec<AElem> {
        (0..self.objects.len())
            .map(AElem::Idem)
            .chain((0..self.gens.len()).map(AElem::Gen))
            .collect()
    }

    pub fn basis_in_degree(&self, n: i32) -> Vec<AElem> {
        self.basis().into_iter().filter(|a| self.degree(*a) == n).collect()
    }

    pub fn mul_basis(&self, a: AElem, b: AElem) -> Vector<AElem> {
        let one = self.field.one();
        match (a, b) {
            (AElem::Idem(s), _) => {
                if self.source(b) == s {
                    Vector::basis(b, one)
                } else {
                    Vector::zero()
                }
            }
            (_, AElem::Idem(t)) => {
                if self.target(a) == t {
                    Vector::basis(a, one)
                } else {
                    Vector::zero()
                }
            }
            (AElem::Gen(x), AElem::Gen(y)) => self.products.get(&(x, y)).cloned().unwrap_or_default(),
        }
    }

    pub fn mul(&self, x: &Vector<AElem>, y: &Vector<AElem>) -> Vector<AElem> {
        let mut r = Vector::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                r.add_scaled(&self.mul_basis(*a, *b), &(ca * cb));
            }
        }
        r
    }

    /// Graded commutator `[x, y] = xy − (−1)^{|x||y|} yx`, extended bilinearly.
    pub fn bracket(&self, x: &Vector<AElem>, y: &Vector<AElem>) -> Vector<AElem> {
        let mut r = Vector::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                let c = ca * cb;
                r.add_scaled(&self.mul_basis(*a, *b), &c);
                let s = self.field.sign(self.degree(*a) as i64 * self.degree(*b) as i64);
                r.add_scaled(&self.mul_basis(*b, *a), &-(c * s));
            }
        }
        r
    }

    pub fn d_basis(&self, a: AElem) -> &Vector<AElem> {
        match a {
            AElem::Idem(s) => &self.d_idem[s],
            AElem::Gen(i) => &self.d_gen[i],
        }
    }

    pub fn d(&self, v: &Vector<AElem>) -> Vector<AElem> {
        v.map_linear(|a| self.d_basis(*a).clone())
    }

    pub fn unit(&self) -> Vector<AElem> {
        (0..self.objects.len())
            .map(|s| (AElem::Idem(s), self.field.one()))
            .collect()
    }

    pub fn element(&self, a: AElem) -> Vector<AElem> {
        Vector::basis(a, self.field.one())
    }

    pub fn degree_of(&self, v: &Vector<AElem>) -> Option<i32> {
        let mut it = v.keys().map(|a| self.degree(*a));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn render(&self, v: &Vector<AElem>) -> String {
        render(v, |a| self.label(*a))
    }

    /// `e_s v e_t`.
    pub fn component(&self, v: &Vector<AElem>, s: usize, t: usize) -> Vector<AElem> {
        v.filter(|a| self.source(*a) == s && self.target(*a) == t)
    }

    /// Same algebra with a different differential and curvature.
    pub fn with_structure(
        &self,
        d_idem: Vec<Vector<AElem>>,
        d_gen: Vec<Vector<AElem>>,
        curvature: Vector<AElem>,
    ) -> CurvedAlgebra {
        CurvedAlgebra {
            d_idem,
            d_gen,
            curvature,
            ..self.clone()
        }
    }

    /// True when every product of generators, every differential and the curvature
    /// avoid the idempotents, so the algebra is dual to a pointed coalgebra.
    pub fn is_augmented(&self) -> bool {
        let gens_only = |v: &Vector<AElem>| v.keys().all(|a| matches!(a, AElem::Gen(_)));
        self.d_idem.iter().all(|v| v.is_zero())
            && self.d_gen.iter().all(gens_only)
            && self.products.values().all(gens_only)
            && gens_only(&self.curvature)
    }
}

/// Candidate pairs on which a bilinear identity built from the product and a
/// sparse operator can fail; every other pair gives zero on both sides.
pub(crate) fn sparse_pairs(a: &CurvedAlgebra, op: &dyn Fn(AElem) -> Vector<AElem>) -> BTreeSet<(AElem, AElem)> {
    let mut out = BTreeSet::new();
    for &(x, y) in a.products.keys() {
        out.insert((AElem::Gen(x), AElem::Gen(y)));
    }
    let all = a.basis();
    for &x in &all {
        for w in op(x).keys() {
            match w {
                AElem::Gen(wi) => {
                    for &y in &a.right[*wi] {
                        out.insert((x, AElem::Gen(y)));
                    }
                    for &z in &a.left[*wi] {
                        out.insert((AElem::Gen(z), x));
                    }
                }
                AElem::Idem(s) => {
                    for &y in &all {
                        if a.source(y) == *s {
                            out.insert((x, y));
                        }
                        if a.target(y) == *s {
                            out.insert((y, x));
                        }
                    }
                }
            }
        }
    }
    for &x in &all {
        for s in 0..a.objects.len() {
            if a.target(x) == s {
                out.insert((x, AElem::Idem(s)));
            }
            if a.source(x) == s {
                out.insert((AElem::Idem(s), x));
            }
        }
    }
    // pairs (x, y) with x·w ≠ 0 for some w in op(y) are covered by the left partners above
    out
}

pub(crate) fn sparse_triples(a: &CurvedAlgebra) -> Vec<(usize, usize, usize)> {
    let mut out = BTreeSet::new();
    for (&(x, y), v) in &a.products {
        for w in v.keys() {
            match w {
                AElem::Gen(wi) => {
                    for &z in &a.right[*wi] {
                        out.insert((x, y, z));
                    }
                }
                AElem::Idem(_) => {
                    for z in 0..a.gens.len() {
                        out.insert((x, y, z));
                    }
                }
            }
        }
        for &z in &a.right[y] {
            out.insert((x, y, z));
        }
        for &w in &a.left[x] {
            out.insert((w, x, y));
        }
    }
    // x(yz) with yz ≠ 0: x must multiply a term of yz
    for (&(y, z), v) in &a.products {
        for t in v.keys() {
            match t {
                AElem::Gen(ti) => {
                    for &x in &a.left[*ti] {
                        out.insert((x, y, z));
                    }
                }
                AElem::Idem(_) => {
                    for x in 0..a.gens.len() {
                        out.insert((x, y, z));
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Direct check of the curved algebra axioms.
pub fn validate_curved_direct(a: &CurvedAlgebra) -> Report {
    let mut r = Report::new();
    let f = a.field;
    for (&(x, y), v) in &a.products {
        let (gx, gy) = (&a.gens[x], &a.gens[y]);
        for k in v.keys() {
            if gx.target != gy.source
                || a.degree(*k) != gx.degree + gy.degree
                || a.source(*k) != gx.source
                || a.target(*k) != gy.target
            {
                r.fail("product shape", format!("{}·{} ∋ {}", gx.label, gy.label, a.label(*k)));
            }
        }
    }
    for x in a.basis() {
        for k in a.d_basis(x).keys() {
            if a.degree(*k) != a.degree(x) + 1 || a.source(*k) != a.source(x) || a.target(*k) != a.target(x) {
                r.fail("differential shape", format!("d({}) ∋ {}", a.label(x), a.label(*k)));
            }
        }
    }
    for k in a.curvature.keys() {
        if a.degree(*k) != 2 {
            r.fail("curvature shape", a.label(*k));
        }
    }
    for (x, y, z) in sparse_triples(a) {
        let (x, y, z) = (a.element(AElem::Gen(x)), a.element(AElem::Gen(y)), a.element(AElem::Gen(z)));
        if a.mul(&a.mul(&x, &y), &z) != a.mul(&x, &a.mul(&y, &z)) {
            r.fail(
                "associativity",
                format!("({},{},{})", a.render(&x), a.render(&y), a.render(&z)),
            );
        }
    }
    let dop = |x: AElem| a.d_basis(x).clone();
    for (x, y) in sparse_pairs(a, &dop) {
        if a.target(x) != a.source(y) {
            continue;
        }
        let (vx, vy) = (a.element(x), a.element(y));
        let lhs = a.d(&a.mul(&vx, &vy));
        let mut rhs = a.mul(a.d_basis(x), &vy);
        rhs.add_scaled(&a.mul(&vx, a.d_basis(y)), &f.sign(a.degree(x) as i64));
        if lhs != rhs {
            r.fail("derivation", format!("({},{})", a.label(x), a.label(y)));
        }
    }
    for x in a.basis() {
        let vx = a.element(x);
        let dd = a.d(a.d_basis(x));
        if dd != a.bracket(&a.curvature, &vx) {
            r.fail("d^2 = [h,-]", a.label(x));
        }
    }
    if !a.d(&a.curvature).is_zero() {
        r.fail("dh = 0", a.render(&a.curvature));
    }
    r
}

/// Check through the uncurving at η-count 2: H A must be a dg algebra.
pub fn validate_curved_uncurved(a: &CurvedAlgebra) -> Report {
    let mut r = Report::new();
    let h = Uncurving::new(a, EtaMode::Free, HBound::EtaCount(2));
    let f = a.field;
    for (x, y, z) in sparse_triples(a) {
        let w = |i| h.from_alg(&a.element(AElem::Gen(i)));
        let (x, y, z) = (w(x), w(y), w(z));
        if h.mul(&h.mul(&x, &y), &z) != h.mul(&x, &h.mul(&y, &z)) {
            r.fail("H associativity", h.render(&x));
        }
    }
    let dop = |x: AElem| a.d_basis(x).clone();
    for (x, y) in sparse_pairs(a, &dop) {
        if a.target(x) != a.source(y) {
            continue;
        }
        let (hx, hy) = (h.from_alg(&a.element(x)), h.from_alg(&a.element(y)));
        let lhs = h.d(&h.mul(&hx, &hy));
        let mut rhs = h.mul(&h.d(&hx), &hy);
        rhs.add_scaled(&h.mul(&hx, &h.d(&hy)), &f.sign(a.degree(x) as i64));
        if lhs != rhs {
            r.fail("H derivation", format!("({},{})", a.label(x), a.label(y)));
        }
    }
    for w in h.generators() {
        let v = Vector::basis(w.clone(), f.one());
        if !h.d(&h.d(&v)).is_zero() {
            r.fail("d_H^2", h.word_label(&w));
        }
    }
    r
}

/// Both verdicts; a disagreement between them is itself reported.
pub fn validate_curved_algebra(a: &CurvedAlgebra) -> Report {
    let mut direct = validate_curved_direct(a);
    let shape = direct.has("product shape") || direct.has("differential shape") || direct.has("curvature shape");
    if !shape {
        let second = validate_curved_uncurved(a);
        if second.is_valid() != direct.is_valid() {
            direct.fail(
                "uncurving verdict disagrees",
                format!("direct {} / uncurved {}", direct.is_valid(), second.is_valid()),
            );
        }
    }
    direct
}

/// A curved algebra morphism `(f, b)`; `f` is given on idempotents and generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub idem: Vec<Vector<AElem>>,
    pub gen: Vec<Vector<AElem>>,
    pub b: Vector<AElem>,
}

impl AlgebraMorphism {
    pub fn identity(a: &CurvedAlgebra) -> AlgebraMorphism {
        AlgebraMorphism {
            idem: (0..a.objects.len()).map(|s| a.element(AElem::Idem(s))).collect(),
            gen: (0..a.gens.len()).map(|i| a.element(AElem::Gen(i))).collect(),
            b: Vector::zero(),
        }
    }

    pub fn with_b(mut self, b: Vector<AElem>) -> AlgebraMorphism {
        self.b = b;
        self
    }

    pub fn apply_basis(&self, x: AElem) -> &Vector<AElem> {
        match x {
            AElem::Idem(s) => &self.idem[s],
            AElem::Gen(i) => &self.gen[i],
        }
    }

    pub fn apply(&self, v: &Vector<AElem>) -> Vector<AElem> {
        v.map_linear(|x| self.apply_basis(*x).clone())
    }
}

/// Checks multiplicativity, unitality and the two curved-map conditions.
pub fn validate_algebra_morphism(src: &CurvedAlgebra, tgt: &CurvedAlgebra, m: &AlgebraMorphism) -> Report {
    let mut r = Report::new();
    if m.idem.len() != src.objects.len() || m.gen.len() != src.gens.len() {
        r.fail("morphism shape", "wrong number of images".into());
        return r;
    }
    for x in src.basis() {
        for k in m.apply_basis(x).keys() {
            if tgt.degree(*k) != src.degree(x) {
                r.fail("degree", format!("{} ↦ {}", src.label(x), tgt.label(*k)));
            }
        }
    }
    if tgt.degree_of(&m.b).is_some_and(|d| d != 1) || m.b.keys().any(|k| tgt.degree(*k) != 1) {
        r.fail("degree of b", tgt.render(&m.b));
    }
    if m.apply(&src.unit()) != tgt.unit() {
        r.fail("unital", "f(1) ≠ 1".into());
    }
    let basis = src.basis();
    for &x in &basis {
        for &y in &basis {
            let lhs = m.apply(&src.mul_basis(x, y));
            let rhs = tgt.mul(m.apply_basis(x), m.apply_basis(y));
            if lhs != rhs {
                r.fail("multiplicative", format!("({},{})", src.label(x), src.label(y)));
            }
        }
    }
    for &x in &basis {
        let fx = m.apply_basis(x);
        let lhs = m.apply(src.d_basis(x));
        let mut rhs = tgt.d(fx);
        rhs.add(&tgt.bracket(&m.b, fx));
        if lhs != rhs {
            r.fail("f(dx) = d f(x) + [b, f(x)]", src.label(x));
        }
    }
    let lhs = m.apply(&src.curvature);
    let mut rhs = tgt.curvature.clone();
    rhs.add(&tgt.d(&m.b));
    rhs.add(&tgt.mul(&m.b, &m.b));
    if lhs != rhs {
        r.fail("f(h) = h + db + b^2", tgt.render(&lhs.sub(&rhs)));
    }
    r
}

/// `(g, c) ∘ (f, b) = (g f, c + g(b))`.
pub fn compose_algebra_morphisms(second: &AlgebraMorphism, first: &AlgebraMorphism) -> AlgebraMorphism {
    let mut b = second.b.clone();
    b.add(&second.apply(&first.b));
    AlgebraMorphism {
        idem: first.idem.iter().map(|v| second.apply(v)).collect(),
        gen: first.gen.iter().map(|v| second.apply(v)).collect(),
        b,
    }
}

/// `f_b: H A → H B` on the letters of `H A`, checked to commute with `d_H` at η-count 2.
pub fn check_uncurved_map(src: &CurvedAlgebra, tgt: &CurvedAlgebra, m: &AlgebraMorphism) -> Report {
    let mut r = Report::new();
    let ha = Uncurving::new(src, EtaMode::Free, HBound::EtaCount(2));
    let hb = Uncurving::new(tgt, EtaMode::Free, HBound::EtaCount(2));
    let fb = |v: &Vector<crate::uncurve::HWord>| crate::uncurve::map_uncurved(&ha, &hb, m, v);
    let mut gens = ha.generators();
    gens.extend((0..src.objects.len()).map(|s| ha.empty(s)));
    let one = |u: &Uncurving, n: usize| -> Vector<crate::uncurve::HWord> {
        (0..n).map(|s| (u.empty(s), src.field.one())).collect()
    };
    if fb(&one(&ha, src.objects.len())) != one(&hb, tgt.objects.len()) {
        r.fail("f_b unital", "f_b(1) ≠ 1".into());
    }
    for w in &gens {
        let img = fb(&Vector::basis(w.clone(), src.field.one()));
        if img.keys().any(|v| hb.word_degree(v) != ha.word_degree(w)) {
            r.fail("f_b degree", ha.word_label(w));
        }
        for v in &gens {
            let lhs = fb(&ha.concat(w, v));
            let rhs = hb.mul(&img, &fb(&Vector::basis(v.clone(), src.field.one())));
            if lhs != rhs {
                r.fail("f_b multiplicative", format!("({},{})", ha.word_label(w), ha.word_label(v)));
            }
        }
    }
    for w in gens {
        let v = Vector::basis(w.clone(), src.field.one());
        if fb(&ha.d(&v)) != hb.d(&fb(&v)) {
            r.fail("f_b chain map", ha.word_label(&w));
        }
    }
    r
}

/// `(d + [b,−], h + db + b²)`; the pair `(id, b)` is then a morphism to the original.
pub fn twist(a: &CurvedAlgebra, b: &Vector<AElem>) -> CurvedAlgebra {
    let d_idem = (0..a.objects.len())
        .map(|s| {
            let x = a.element(AElem::Idem(s));
            let mut v = a.d_basis(AElem::Idem(s)).clone();
            v.add(&a.bracket(b, &x));
            v
        })
        .collect();
    let d_gen = (0..a.gens.len())
        .map(|i| {
            let x = a.element(AElem::Gen(i));
            let mut v = a.d_basis(AElem::Gen(i)).clone();
            v.add(&a.bracket(b, &x));
            v
        })
        .collect();
    let mut h = a.curvature.clone();
    h.add(&a.d(b));
    h.add(&a.mul(b, b));
    a.with_structure(d_idem, d_gen, h)
}

/// `h + da + a²`.
pub fn mc_residual(a: &CurvedAlgebra, x: &Vector<AElem>) -> Vector<AElem> {
    let mut r = a.curvature.clone();
    r.add(&a.d(x));
    r.add(&a.mul(x, x));
    r
}

pub fn mc_check(a: &CurvedAlgebra, x: &Vector<AElem>) -> bool {
    x.keys().all(|k| a.degree(*k) == 1) && mc_residual(a, x).is_zero()
}

/// MC check of `x + η` in `H A` at η-count 2.
pub fn mc_check_uncurved(a: &CurvedAlgebra, x: &Vector<AElem>) -> bool {
    let h = Uncurving::new(a, EtaMode::Free, HBound::EtaCount(2));
    let mut y = h.from_alg(x);
    y.add(&h.eta());
    let mut r = h.d(&y);
    r.add(&h.mul(&y, &y));
    x.keys().all(|k| a.degree(*k) == 1) && r.is_zero()
}

/// Every vector supported on `basis` with coefficients in a finite field.
pub fn all_vectors<K: Ord + Clone>(
    field: Field,
    basis: &[K],
    budget: u128,
) -> Result<Vec<Vector<K>>, Error> {
    let elems = field.elements().ok_or_else(|| Error::InvalidField("enumeration needs F_p".into()))?;
    let q = elems.len() as u128;
    let count = q.checked_pow(basis.len() as u32).unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::EnumerationTooLarge { count });
    }
    let mut out = vec![Vector::zero()];
    for k in basis {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for v in &out {
            for c in &elems {
                let mut w: Vector<K> = v.clone();
                w.add_term(k.clone(), c.clone());
                next.push(w);
            }
        }
        out = next;
    }
    Ok(out)
}

/// All MC elements of a curved algebra over a finite field.
pub fn mc_enumerate(a: &CurvedAlgebra, budget: u128) -> Result<Vec<Vector<AElem>>, Error> {
    let basis = a.basis_in_degree(1);
    Ok(all_vectors(a.field, &basis, budget)?
        .into_iter()
        .filter(|x| mc_check(a, x))
        .collect())
}

/// `End(V)` of a graded space with a degree-one operator `δ`: `d = [δ, −]`, `h = δ²`.
///
/// Basis: the unit `e` as idempotent and matrix units `E{i}{j}` except the last
/// diagonal one. Entries of `delta` are `(i, j, c)` meaning `δ v_j ∋ c v_i`.
pub fn endomorphism_algebra(field: Field, degrees: &[i32], delta: &[(usize, usize, i64)]) -> Result<CurvedAlgebra, Error> {
    let n = degrees.len();
    if n == 0 {
        return Err(Error::IllFormed("empty space".into()));
    }
    for &(i, j, _) in delta {
        if i >= n || j >= n || degrees[i] != degrees[j] + 1 {
            return Err(Error::DegreeMismatch(format!("δ entry ({i},{j})")));
        }
    }
    let last = n - 1;
    let mut gens = Vec::new();
    let mut index = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            if (i, j) != (last, last) {
                index.insert((i, j), gens.len());
                gens.push(Morphism {
                    label: format!("E{i}{j}"),
                    degree: degrees[i] - degrees[j],
                    source: 0,
                    target: 0,
                });
            }
        }
    }
    let to_elem = |m: &BTreeMap<(usize, usize), Scalar>| -> Vector<AElem> {
        let mut v = Vector::zero();
        let corner = m.get(&(last, last)).cloned().unwrap_or_else(|| field.zero());
        v.add_term(AElem::Idem(0), corner.clone());
        for (&(i, j), c) in m {
            if (i, j) != (last, last) {
                v.add_term(AElem::Gen(index[&(i, j)]), c.clone());
            }
        }
        for i in 0..last {
            v.add_term(AElem::Gen(index[&(i, i)]), -corner.clone());
        }
        v
    };
    let unit_matrix = |i: usize, j: usize| {
        let mut m = BTreeMap::new();
        m.insert((i, j), field.one());
        m
    };
    let mut products = Vec::new();
    for (&(i, j), &x) in &index {
        for (&(k, l), &y) in &index {
            if j == k {
                products.push(((x, y), to_elem(&unit_matrix(i, l))));
            }
        }
    }
    let dm: BTreeMap<(usize, usize), Scalar> = {
        let mut m: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for &(i, j, c) in delta {
            let e = m.entry((i, j)).or_insert_with(|| field.zero());
            *e = &*e + &field.int(c);
        }
        m.retain(|_, c| !c.is_zero());
        m
    };
    let matmul = |a: &BTreeMap<(usize, usize), Scalar>, b: &BTreeMap<(usize, usize), Scalar>| {
        let mut m: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, j), x) in a {
            for (&(k, l), y) in b {
                if j == k {
                    let e = m.entry((i, l)).or_insert_with(|| field.zero());
                    *e = &*e + &(x * y);
                }
            }
        }
        m.retain(|_, c| !c.is_zero());
        m
    };
    let bracket = |x: &BTreeMap<(usize, usize), Scalar>, deg: i32| {
        let mut m = matmul(&dm, x);
        let sign = field.sign(deg as i64);
        for ((i, j), c) in matmul(x, &dm) {
            let e = m.entry((i, j)).or_insert_with(|| field.zero());
            *e = &*e - &(c * &sign);
        }
        m.retain(|_, c| !c.is_zero());
        m
    };
    let d_gen = index
        .iter()
        .map(|(&(i, j), _)| to_elem(&bracket(&unit_matrix(i, j), degrees[i] - degrees[j])))
        .collect::<Vec<_>>();
    // index iterates in key order, which is also generator order
    let mut identity = BTreeMap::new();
    for i in 0..n {
        identity.insert((i, i), field.one());
    }
    let d_idem = vec![to_elem(&bracket(&identity, 0))];
    let h = to_elem(&matmul(&dm, &dm));
    CurvedAlgebra::new(field, vec!["V".into()], gens, products, d_idem, d_gen, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k_eps2(f: Field, planted: bool) -> CurvedAlgebra {
        let e = Morphism { label: "e".into(), degree: 2, source: 0, target: 0 };
        let eps = Vector::basis(AElem::Gen(0), f.one());
        let d_idem = vec![if planted { eps.clone() } else { Vector::zero() }];
        CurvedAlgebra::new(f, vec!["*".into()], vec![e], vec![], d_idem, vec![Vector::zero()], eps).unwrap()
    }

    #[test]
    fn square_zero_curvature() {
        let f = Field::Rational;
        assert!(validate_curved_algebra(&k_eps2(f, false)).is_valid());
        let bad = validate_curved_algebra(&k_eps2(f, true));
        assert!(bad.has("derivation"));
        assert!(!bad.has("uncurving verdict disagrees"));
        assert!(mc_enumerate(&k_eps2(Field::Prime(2), false), 1000).unwrap().is_empty());
    }

    #[test]
    fn endomorphisms_of_a_cone() {
        let f = Field::Prime(2);
        let a = endomorphism_algebra(f, &[-1, 0], &[(1, 0, 1)]).unwrap();
        assert!(validate_curved_algebra(&a).is_valid());
        assert!(a.curvature.is_zero());
        let mcs = mc_enumerate(&a, 1 << 10).unwrap();
        let brute: Vec<_> = all_vectors(f, &a.basis_in_degree(1), 1 << 10)
            .unwrap()
            .into_iter()
            .filter(|x| mc_residual(&a, x).is_zero())
            .collect();
        assert_eq!(mcs, brute);
        for x in all_vectors(f, &a.basis_in_degree(1), 1 << 10).unwrap() {
            assert_eq!(mc_check(&a, &x), mc_check_uncurved(&a, &x));
        }
    }

    #[test]
    fn curved_endomorphisms() {
        let f = Field::Rational;
        // δ² ≠ 0: v0 → v1 → v2 in degrees 0, 1, 2
        let a = endomorphism_algebra(f, &[0, 1, 2], &[(1, 0, 1), (2, 1, 1)]).unwrap();
        assert!(!a.curvature.is_zero());
        assert!(validate_curved_algebra(&a).is_valid());
    }

    #[test]
    fn twist_and_identity_morphisms() {
        let f = Field::Prime(3);
        let a = endomorphism_algebra(f, &[0, 1, 1], &[(1, 0, 1)]).unwrap();
        let b: Vector<AElem> = a.basis_in_degree(1).into_iter().map(|x| (x, f.int(2))).collect();
        let t = twist(&a, &b);
        assert!(validate_curved_algebra(&t).is_valid());
        let m = AlgebraMorphism::identity(&a).with_b(b.clone());
        assert!(validate_algebra_morphism(&t, &a, &m).is_valid());
        assert!(check_uncurved_map(&t, &a, &m).is_valid());
        let back = AlgebraMorphism::identity(&a).with_b(b.neg());
        assert!(validate_algebra_morphism(&a, &t, &back).is_valid());
        let id = compose_algebra_morphisms(&m, &back);
        assert_eq!(id, AlgebraMorphism::identity(&a));
        let wrong = AlgebraMorphism::identity(&a);
        assert!(!validate_algebra_morphism(&t, &a, &wrong).is_valid());
        assert!(!check_uncurved_map(&t, &a, &wrong).is_valid());
    }

    #[test]
    fn off_diagonal_twist() {
        let f = Field::Prime(5);
        let x = Morphism { label: "x".into(), degree: 1, source: 1, target: 0 };
        let a = CurvedAlgebra::new(f, vec!["p".into(), "q".into()], vec![x], vec![], vec![Vector::zero(); 2], vec![Vector::zero()], Vector::zero()).unwrap();
        let b = Vector::basis(AElem::Gen(0), f.int(3));
        let t = twist(&a, &b);
        assert!(!t.d_basis(AElem::Idem(0)).is_zero());
        let m = AlgebraMorphism::identity(&a).with_b(b);
        assert!(validate_algebra_morphism(&t, &a, &m).is_valid());
        assert!(check_uncurved_map(&t, &a, &m).is_valid());
    }

    #[test]
    fn non_multiplicative_maps_are_not_dg_maps() {
        let f = Field::Rational;
        let a = endomorphism_algebra(f, &[0, 1], &[]).unwrap();
        let mut m = AlgebraMorphism::identity(&a);
        let g = a.gen_index("E01").unwrap();
        m.gen[g] = Vector::basis(AElem::Gen(g), f.int(2));
        assert!(!validate_algebra_morphism(&a, &a, &m).is_valid());
        assert!(check_uncurved_map(&a, &a, &m).has("f_b multiplicative"));
    }
}
