use alloc::format;
use alloc::vec::Vec;

use crate::coalgebra::{validate_coalgebra_morphism, CoalgebraMorphism, PointedCurvedCoalgebra};
use crate::dgcat::{free_category, Arrow, DgCategory, Path};
use crate::error::{Error, Report};
use crate::vector::Vector;

/// Cobar label of a coalgebra basis element.
pub fn cobar_label(label: &str) -> alloc::string::String {
    format!("<{label}>")
}

/// `Ω C` truncated at word length `bound`: arrows `x_c` of degree `|c| + 1` with
/// `d x_c = h(c)·id − x_{dc} − Σ (−1)^{|c'|} x_{c'} x_{c''}`.
pub fn cobar(c: &PointedCurvedCoalgebra, bound: usize) -> DgCategory {
    let f = c.field;
    let arrows = c
        .basis
        .iter()
        .map(|b| Arrow { label: cobar_label(&b.label), degree: b.degree + 1, source: b.source, target: b.target })
        .collect();
    let differentials = (0..c.dim())
        .map(|i| {
            let b = &c.basis[i];
            let mut terms = Vec::new();
            if let Some(h) = c.curvature.get(&i) {
                terms.push((Path { source: b.source, arrows: Vec::new() }, h.clone()));
            }
            for (j, x) in &c.differential[i] {
                terms.push((Path { source: b.source, arrows: alloc::vec![*j] }, -x));
            }
            for ((p, q), x) in &c.coproduct[i] {
                let sign = f.sign(c.basis[*p].degree as i64 + 1);
                terms.push((Path { source: b.source, arrows: alloc::vec![*p, *q] }, &sign * x));
            }
            terms
        })
        .collect();
    free_category(f, c.objects.clone(), arrows, differentials, Some(bound.max(1)), "*")
        .expect("cobar arrows are well formed")
}

/// Index in `Ω C` of the generator `x_c` for each basis element `c`.
pub fn cobar_generators(omega: &DgCategory, c: &PointedCurvedCoalgebra) -> Vec<usize> {
    c.basis
        .iter()
        .map(|b| omega.index_of(&cobar_label(&b.label)).expect("generator present"))
        .collect()
}

/// A dg functor out of a cobar category, given on objects and generators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CobarFunctor {
    pub object_map: Vec<usize>,
    pub generator_images: Vec<Vector<usize>>,
}

impl CobarFunctor {
    /// Extends to a combination of cobar words, composing images in path order.
    pub fn apply(&self, omega: &DgCategory, target: &DgCategory, v: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::zero();
        for (i, x) in v {
            let m = omega.morphism(*i);
            let word = omega.word(*i).unwrap_or(&[]);
            let mut acc = target.identity_vector(self.object_map[m.source]);
            for g in word {
                acc = target.mu(&acc, &self.generator_images[*g]);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, x);
        }
        out
    }
}

/// Shape of the images and `d F(x_c) = F(d x_c)` on every generator, using the
/// differential of `omega` (built with word bound at least 2).
pub fn validate_cobar_functor(
    omega: &DgCategory,
    c: &PointedCurvedCoalgebra,
    target: &DgCategory,
    functor: &CobarFunctor,
) -> Report {
    let mut r = Report::new();
    if functor.object_map.len() != c.objects.len()
        || functor.generator_images.len() != c.dim()
        || functor.object_map.iter().any(|&o| o >= target.objects().len())
    {
        r.fail("functor shape", "wrong number of images".into());
        return r;
    }
    for (i, img) in functor.generator_images.iter().enumerate() {
        let b = &c.basis[i];
        let (s, t) = (functor.object_map[b.source], functor.object_map[b.target]);
        for k in img.keys() {
            let m = target.morphism(*k);
            if m.source != s || m.target != t || m.degree != b.degree + 1 {
                r.fail("generator image", format!("{} ↦ {}", cobar_label(&b.label), m.label));
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for (i, g) in cobar_generators(omega, c).into_iter().enumerate() {
        let lhs = target.d(&functor.generator_images[i]);
        let rhs = functor.apply(omega, target, omega.differential(g));
        if lhs != rhs {
            r.fail("chain map", cobar_label(&c.basis[i].label));
        }
    }
    r
}

/// `Ω(f, a)`: `x_c ↦ x_{f(c)} − a(c)·id`, checked against `Ω C'` at `max(bound, 2)`.
pub fn cobar_on_morphism(
    src: &PointedCurvedCoalgebra,
    tgt: &PointedCurvedCoalgebra,
    m: &CoalgebraMorphism,
    bound: usize,
) -> Result<CobarFunctor, Error> {
    let r = validate_coalgebra_morphism(src, tgt, m);
    if !r.is_valid() {
        return Err(Error::NotCurvedMap { witness: format!("{r}") });
    }
    let bound = bound.max(2);
    let om_src = cobar(src, bound);
    let om_tgt = cobar(tgt, bound);
    let gens = cobar_generators(&om_tgt, tgt);
    let images = (0..src.dim())
        .map(|i| {
            let mut v = m.linear[i].map_keys(|k| gens[*k]);
            if let Some(a) = m.functional.get(&i) {
                let s = m.object_map[src.basis[i].source];
                v.add_scaled(&om_tgt.identity_vector(s), &-a);
            }
            v
        })
        .collect();
    let functor = CobarFunctor { object_map: m.object_map.clone(), generator_images: images };
    let r = validate_cobar_functor(&om_src, src, &om_tgt, &functor);
    if !r.is_valid() {
        return Err(Error::NotCurvedMap { witness: format!("{r}") });
    }
    Ok(functor)
}

/// `G ∘ F` for functors between cobar categories, `F: Ω C → Ω C'`, `G: Ω C' → E`.
pub fn compose_cobar_functors(
    mid: &DgCategory,
    target: &DgCategory,
    second: &CobarFunctor,
    first: &CobarFunctor,
) -> CobarFunctor {
    CobarFunctor {
        object_map: first.object_map.iter().map(|&o| second.object_map[o]).collect(),
        generator_images: first.generator_images.iter().map(|v| second.apply(mid, target, v)).collect(),
    }
}
