use alloc::vec;
use alloc::vec::Vec;

use super::bar::BarCoalgebra;
use super::mc::{object_maps, MCElement};
use crate::coalgebra::{validate_coalgebra_morphism, CoalgebraMorphism, PointedCurvedCoalgebra};
use crate::curved::all_vectors;
use crate::dgcat::{DgCategory, Retract};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// `τ([b]) = −(b − v(b)·id)` on one-letter words, zero on longer ones.
pub fn bar_twisting(d: &DgCategory, v: &Retract, b: &BarCoalgebra) -> MCElement {
    let xi = b
        .words
        .iter()
        .map(|w| {
            if w.len() != 1 {
                return Vector::zero();
            }
            let x = Vector::basis(w[0], d.field.one());
            let mut t = x.neg();
            let m = d.morphism(w[0]);
            if m.source == m.target {
                t.add_scaled(&d.identity_vector(m.source), &v.eval(d, &x));
            }
            t
        })
        .collect();
    MCElement { object_map: (0..d.objects().len()).collect(), xi }
}

/// The coalgebra map `C → B D` classified by `ξ`.
///
/// `f(c) = Σ_k ℓ^{⊗k} Δ̄^{(k−1)} c` with `ℓ(c) = −[ξ(c) − v(ξ(c))·id]`, and
/// `a(c) = −v(ξ(c))`. Needs the bar bound to reach the conilpotence degree of `C`.
pub fn psi(
    c: &PointedCurvedCoalgebra,
    d: &DgCategory,
    v: &Retract,
    b: &BarCoalgebra,
    x: &MCElement,
) -> Result<CoalgebraMorphism, Error> {
    let needed = c.conilpotence_degree().ok_or_else(|| Error::IllFormed("not conilpotent".into()))?;
    if b.bound < needed {
        return Err(Error::TruncationTooSmall { needed });
    }
    let ell: Vec<Vector<usize>> = x
        .xi
        .iter()
        .map(|y| y.filter(|k| !d.is_identity(*k)).neg())
        .collect();
    let mut linear = vec![Vector::zero(); c.dim()];
    for (i, out) in linear.iter_mut().enumerate() {
        for k in 1..=needed {
            for (tuple, coef) in &c.iterated_coproduct(i, k) {
                // expand ℓ(c_1) ⊗ … ⊗ ℓ(c_k) into words
                let mut words: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), coef.clone())];
                for ci in tuple {
                    let mut next = Vec::new();
                    for (w, x0) in &words {
                        for (l, x1) in &ell[*ci] {
                            let mut w2 = w.clone();
                            w2.push(*l);
                            next.push((w2, x0 * x1));
                        }
                    }
                    words = next;
                }
                for (w, x0) in words {
                    let idx = b.word_index(&w).ok_or(Error::TruncationTooSmall { needed })?;
                    out.add_term(idx, x0);
                }
            }
        }
    }
    let mut functional = Vector::zero();
    for (i, y) in x.xi.iter().enumerate() {
        functional.add_term(i, -v.eval(d, y));
    }
    Ok(CoalgebraMorphism { object_map: x.object_map.clone(), linear, functional })
}

/// `ξ(c) = τ(f(c)) − a(c)·id`.
pub fn psi_inv(c: &PointedCurvedCoalgebra, d: &DgCategory, v: &Retract, b: &BarCoalgebra, m: &CoalgebraMorphism) -> MCElement {
    let tau = bar_twisting(d, v, b);
    let xi = (0..c.dim())
        .map(|i| {
            let mut y = m.linear[i].map_linear(|w| tau.xi[*w].clone());
            if let Some(a) = m.functional.get(&i) {
                y.add_scaled(&d.identity_vector(m.object_map[c.basis[i].source]), &-a);
            }
            y
        })
        .collect();
    MCElement { object_map: m.object_map.clone(), xi }
}

/// `Hom(C, B D)` by brute force over `F_p`, each candidate validated.
pub fn bar_hom_enumerate(
    c: &PointedCurvedCoalgebra,
    b: &BarCoalgebra,
    budget: u128,
) -> Result<Vec<CoalgebraMorphism>, Error> {
    coalgebra_hom_enumerate(c, &b.coalgebra, budget)
}

/// Curved coalgebra morphisms `C → C'` by brute force over `F_p`.
pub fn coalgebra_hom_enumerate(
    c: &PointedCurvedCoalgebra,
    bc: &PointedCurvedCoalgebra,
    budget: u128,
) -> Result<Vec<CoalgebraMorphism>, Error> {
    let q = c.field.order().ok_or_else(|| Error::InvalidField("enumeration needs F_p".into()))? as u128;
    let maps = object_maps(c.objects.len(), bc.objects.len());
    let keys_for = |o: &[usize]| -> (Vec<(usize, usize)>, Vec<usize>) {
        let mut lin = Vec::new();
        let mut fun = Vec::new();
        for (i, x) in c.basis.iter().enumerate() {
            for (k, y) in bc.basis.iter().enumerate() {
                if y.source == o[x.source] && y.target == o[x.target] && y.degree == x.degree {
                    lin.push((i, k));
                }
            }
            if x.degree == -1 && o[x.source] == o[x.target] {
                fun.push(i);
            }
        }
        (lin, fun)
    };
    let mut total: u128 = 0;
    for o in &maps {
        let (lin, fun) = keys_for(o);
        let n = q.checked_pow((lin.len() + fun.len()) as u32).unwrap_or(u128::MAX);
        total = total.saturating_add(n);
    }
    if total > budget {
        return Err(Error::EnumerationTooLarge { count: total });
    }
    let mut out = Vec::new();
    for o in maps {
        let (lin, fun) = keys_for(&o);
        let lins = all_vectors(c.field, &lin, budget)?;
        let funs = all_vectors(c.field, &fun, budget)?;
        for l in &lins {
            let mut linear = vec![Vector::zero(); c.dim()];
            for ((i, k), x) in l {
                linear[*i].add_term(*k, x.clone());
            }
            for a in &funs {
                let m = CoalgebraMorphism { object_map: o.clone(), linear: linear.clone(), functional: a.clone() };
                if validate_coalgebra_morphism(c, bc, &m).is_valid() {
                    out.push(m);
                }
            }
        }
    }
    Ok(out)
}
