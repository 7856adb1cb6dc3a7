use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::sset::{validate_map, FiniteSimplicialSet, SimplicialMap};
use crate::coalgebra::{dualize_inverse, CoalgebraMorphism, PointedCurvedCoalgebra};
use crate::curved::{twist, AElem, AlgebraMorphism, CurvedAlgebra};
use crate::dgcat::Morphism;
use crate::error::{Error, Report};
use crate::scalar::Field;
use crate::vector::Vector;

/// Normalized chains: basis = nondegenerate simplices (indexed as in `K`), degree `−n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedChains {
    pub field: Field,
    pub degrees: Vec<i32>,
    pub differential: Vec<Vector<usize>>,
    /// Full Alexander–Whitney coproduct, grouplike terms included.
    pub coproduct: Vec<Vector<(usize, usize)>>,
}

pub fn normalized_chains(field: Field, k: &FiniteSimplicialSet) -> NormalizedChains {
    let degrees = k.simplices.iter().map(|s| -(s.dim as i32)).collect();
    let differential = (0..k.len())
        .map(|x| {
            let mut v = Vector::zero();
            let e = k.elem(x);
            for i in 0..k.faces[x].len() {
                let f = k.face(&e, i);
                if f.is_nondegenerate() {
                    v.add_term(f.base, field.sign(i as i64));
                }
            }
            v
        })
        .collect();
    let coproduct = (0..k.len())
        .map(|x| {
            let mut v = Vector::zero();
            for i in 0..=k.simplices[x].dim {
                let (a, b) = k.front_back(x, i);
                if a.is_nondegenerate() && b.is_nondegenerate() {
                    v.add_term((a.base, b.base), field.one());
                }
            }
            v
        })
        .collect();
    NormalizedChains { field, degrees, differential, coproduct }
}

impl NormalizedChains {
    fn d(&self, v: &Vector<usize>) -> Vector<usize> {
        v.map_linear(|x| self.differential[*x].clone())
    }
}

/// `d² = 0`, coassociativity, and `d` a coderivation of the coproduct.
pub fn validate_normalized_chains(c: &NormalizedChains) -> Report {
    let f = c.field;
    let mut r = Report::new();
    for x in 0..c.degrees.len() {
        if !c.d(&c.differential[x]).is_zero() {
            r.fail("d^2", format!("{x}"));
        }
        let mut left: Vector<(usize, usize, usize)> = Vector::zero();
        let mut right: Vector<(usize, usize, usize)> = Vector::zero();
        for ((a, b), k) in &c.coproduct[x] {
            for ((p, q), l) in &c.coproduct[*a] {
                left.add_term((*p, *q, *b), k * l);
            }
            for ((p, q), l) in &c.coproduct[*b] {
                right.add_term((*a, *p, *q), k * l);
            }
        }
        if left != right {
            r.fail("coassociativity", format!("{x}"));
        }
        let mut lhs: Vector<(usize, usize)> = Vector::zero();
        for (y, k) in &c.differential[x] {
            lhs.add_scaled(&c.coproduct[*y], k);
        }
        let mut rhs: Vector<(usize, usize)> = Vector::zero();
        for ((a, b), k) in &c.coproduct[x] {
            for (a2, l) in &c.differential[*a] {
                rhs.add_term((*a2, *b), k * l);
            }
            let sign = f.sign(c.degrees[*a] as i64);
            for (b2, l) in &c.differential[*b] {
                rhs.add_term((*a, *b2), &(k * l) * &sign);
            }
        }
        if lhs != rhs {
            r.fail("coderivation", format!("{x}"));
        }
    }
    r
}

/// Generator index of each simplex of dimension ≥ 1 in the cochain algebra.
fn gen_indices(k: &FiniteSimplicialSet) -> (Vec<usize>, Vec<Option<usize>>, Vec<usize>) {
    let verts = k.vertices();
    let mut obj_of = vec![usize::MAX; k.len()];
    for (i, &v) in verts.iter().enumerate() {
        obj_of[v] = i;
    }
    let mut gen_of = vec![None; k.len()];
    let mut gens = Vec::new();
    for x in 0..k.len() {
        if k.simplices[x].dim > 0 {
            gen_of[x] = Some(gens.len());
            gens.push(x);
        }
    }
    (obj_of, gen_of, gens)
}

/// `(C*(K), δ, ∪)` with `δ` the transpose of `Σ (−1)^i ∂_i` and zero curvature.
///
/// Objects are the vertices; the dual of an `n`-simplex sits in degree `n`,
/// in component (first vertex, last vertex).
pub fn cochain_algebra(field: Field, k: &FiniteSimplicialSet) -> CurvedAlgebra {
    let (obj_of, gen_of, gens) = gen_indices(k);
    let objects: Vec<String> = k.vertices().iter().map(|&v| k.simplices[v].label.clone()).collect();
    let morphisms = gens
        .iter()
        .map(|&x| Morphism {
            label: k.simplices[x].label.clone(),
            degree: k.simplices[x].dim as i32,
            source: obj_of[k.first_vertex(x)],
            target: obj_of[k.last_vertex(x)],
        })
        .collect();
    let to_elem = |x: usize| match gen_of[x] {
        Some(g) => AElem::Gen(g),
        None => AElem::Idem(obj_of[x]),
    };
    // δ(τ*) = Σ_σ τ*(∂σ) σ*
    let mut d_idem = vec![Vector::zero(); objects.len()];
    let mut d_gen = vec![Vector::zero(); gens.len()];
    let mut products: BTreeMap<(usize, usize), Vector<AElem>> = BTreeMap::new();
    for &s in &gens {
        let e = k.elem(s);
        for i in 0..k.faces[s].len() {
            let f = k.face(&e, i);
            if f.is_nondegenerate() {
                let target = match to_elem(f.base) {
                    AElem::Idem(o) => &mut d_idem[o],
                    AElem::Gen(g) => &mut d_gen[g],
                };
                target.add_term(AElem::Gen(gen_of[s].unwrap()), field.sign(i as i64));
            }
        }
        for i in 1..k.simplices[s].dim {
            let (a, b) = k.front_back(s, i);
            if a.is_nondegenerate() && b.is_nondegenerate() {
                products
                    .entry((gen_of[a.base].unwrap(), gen_of[b.base].unwrap()))
                    .or_default()
                    .add_term(AElem::Gen(gen_of[s].unwrap()), field.one());
            }
        }
    }
    CurvedAlgebra::new(field, objects, morphisms, products.into_iter().collect(), d_idem, d_gen, Vector::zero())
        .expect("cochains are well formed")
}

/// The constant 1-cochain `e`: value 1 on every nondegenerate edge.
pub fn edge_cochain(field: Field, k: &FiniteSimplicialSet) -> Vector<AElem> {
    let (_, gen_of, _) = gen_indices(k);
    k.of_dim(1).into_iter().map(|x| (AElem::Gen(gen_of[x].unwrap()), field.one())).collect()
}

/// `C̃*(K)`: `δ̃ = δ − [e, −]`, `h = e∪e − δe`.
pub fn twisted_cochain_algebra(field: Field, k: &FiniteSimplicialSet) -> CurvedAlgebra {
    twist(&cochain_algebra(field, k), &edge_cochain(field, k).neg())
}

/// `C̃_*(K)`, the dual of the twisted cochains.
pub fn twisted_chains(field: Field, k: &FiniteSimplicialSet) -> PointedCurvedCoalgebra {
    dualize_inverse(&twisted_cochain_algebra(field, k)).expect("twisted cochains are augmented")
}

/// `(id, −e): C̃* → C*` and `(id, e): C* → C̃*`.
pub fn untwisting_pair(field: Field, k: &FiniteSimplicialSet) -> (AlgebraMorphism, AlgebraMorphism) {
    let plain = cochain_algebra(field, k);
    let e = edge_cochain(field, k);
    (
        AlgebraMorphism::identity(&plain).with_b(e.neg()),
        AlgebraMorphism::identity(&plain).with_b(e),
    )
}

/// `(f_*, x_f)`: the normalized pushforward, and `x_f = 1` on nondegenerate edges
/// with degenerate image.
pub fn chains_on_map(
    field: Field,
    k: &FiniteSimplicialSet,
    l: &FiniteSimplicialSet,
    f: &SimplicialMap,
) -> Result<CoalgebraMorphism, Error> {
    validate_map(k, l, f)?;
    let (kobj, kgen, kgens) = gen_indices(k);
    let (lobj, lgen, _) = gen_indices(l);
    let mut object_map = vec![0; k.vertices().len()];
    for v in k.vertices() {
        object_map[kobj[v]] = lobj[f.images[v].base];
    }
    let mut linear = Vec::with_capacity(kgens.len());
    let mut functional = Vector::zero();
    for &x in &kgens {
        let img = &f.images[x];
        if img.is_nondegenerate() {
            linear.push(Vector::basis(lgen[img.base].unwrap(), field.one()));
        } else {
            linear.push(Vector::zero());
            if k.simplices[x].dim == 1 {
                functional.add_term(kgen[x].unwrap(), field.one());
            }
        }
    }
    Ok(CoalgebraMorphism { object_map, linear, functional })
}
