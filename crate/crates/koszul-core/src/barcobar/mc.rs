use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::cobar::{cobar, cobar_generators, validate_cobar_functor, CobarFunctor};
use crate::coalgebra::{CoalgebraMorphism, PointedCurvedCoalgebra};
use crate::curved::all_vectors;
use crate::dgcat::DgCategory;
use crate::error::{Error, Report};
use crate::vector::Vector;

/// An object map and a degree-one map `ξ: C̄ → D`, one image per basis element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MCElement {
    pub object_map: Vec<usize>,
    pub xi: Vec<Vector<usize>>,
}

/// `dξ(c) + ξ(dc) + Σ (−1)^{|c'|} ξ(c')·ξ(c'') − h(c)·id` for each basis element.
pub fn mc_residuals(c: &PointedCurvedCoalgebra, d: &DgCategory, x: &MCElement) -> Vec<Vector<usize>> {
    let f = c.field;
    (0..c.dim())
        .map(|i| {
            let mut r = d.d(&x.xi[i]);
            for (j, k) in &c.differential[i] {
                r.add_scaled(&x.xi[*j], k);
            }
            for ((p, q), k) in &c.coproduct[i] {
                let sign = f.sign(c.basis[*p].degree as i64);
                r.add_scaled(&d.mu(&x.xi[*p], &x.xi[*q]), &(&sign * k));
            }
            if let Some(h) = c.curvature.get(&i) {
                r.add_scaled(&d.identity_vector(x.object_map[c.basis[i].source]), &-h);
            }
            r
        })
        .collect()
}

fn shape(c: &PointedCurvedCoalgebra, d: &DgCategory, x: &MCElement) -> Report {
    let mut r = Report::new();
    if x.object_map.len() != c.objects.len()
        || x.xi.len() != c.dim()
        || x.object_map.iter().any(|&o| o >= d.objects().len())
    {
        r.fail("MC shape", "wrong number of components".into());
        return r;
    }
    for (i, v) in x.xi.iter().enumerate() {
        let b = &c.basis[i];
        let (s, t) = (x.object_map[b.source], x.object_map[b.target]);
        for k in v.keys() {
            let m = d.morphism(*k);
            if m.source != s || m.target != t || m.degree != b.degree + 1 {
                r.fail("MC component", format!("{} ↦ {}", b.label, m.label));
            }
        }
    }
    r
}

pub fn mc_check_report(c: &PointedCurvedCoalgebra, d: &DgCategory, x: &MCElement) -> Report {
    let mut r = shape(c, d, x);
    if !r.is_valid() {
        return r;
    }
    for (i, v) in mc_residuals(c, d, x).into_iter().enumerate() {
        if !v.is_zero() {
            r.fail("MC equation", format!("{}: {}", c.basis[i].label, d.label_vector(&v)));
        }
    }
    r
}

pub fn mc_check(c: &PointedCurvedCoalgebra, d: &DgCategory, x: &MCElement) -> bool {
    mc_check_report(c, d, x).is_valid()
}

/// Every map `{0..n} → {0..m}`.
pub fn object_maps(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..m).map(move |o| {
                    let mut q = p.clone();
                    q.push(o);
                    q
                })
            })
            .collect();
    }
    out
}

/// Number of `(O, ξ)` candidates, saturating.
pub fn candidate_count(c: &PointedCurvedCoalgebra, d: &DgCategory) -> Result<u128, Error> {
    let q = c.field.order().ok_or_else(|| Error::InvalidField("enumeration needs F_p".into()))? as u128;
    let mut total: u128 = 0;
    for o in object_maps(c.objects.len(), d.objects().len()) {
        let mut n: u128 = 1;
        for b in &c.basis {
            let dim = d.hom_in_degree(o[b.source], o[b.target], b.degree + 1).len() as u32;
            n = n.saturating_mul(q.checked_pow(dim).unwrap_or(u128::MAX));
        }
        total = total.saturating_add(n);
    }
    Ok(total)
}

/// Every candidate `(O, ξ)` of the right shape.
pub fn candidates(c: &PointedCurvedCoalgebra, d: &DgCategory, budget: u128) -> Result<Vec<MCElement>, Error> {
    let count = candidate_count(c, d)?;
    if count > budget {
        return Err(Error::EnumerationTooLarge { count });
    }
    let mut out = Vec::new();
    for o in object_maps(c.objects.len(), d.objects().len()) {
        let keys: Vec<(usize, usize)> = c
            .basis
            .iter()
            .enumerate()
            .flat_map(|(i, b)| {
                d.hom_in_degree(o[b.source], o[b.target], b.degree + 1)
                    .into_iter()
                    .map(move |k| (i, k))
            })
            .collect();
        for v in all_vectors(c.field, &keys, budget)? {
            let mut xi = vec![Vector::zero(); c.dim()];
            for ((i, k), x) in &v {
                xi[*i].add_term(*k, x.clone());
            }
            out.push(MCElement { object_map: o.clone(), xi });
        }
    }
    Ok(out)
}

/// `MC(C, D)` by brute force over `F_p`.
pub fn mc_enumerate(c: &PointedCurvedCoalgebra, d: &DgCategory, budget: u128) -> Result<Vec<MCElement>, Error> {
    let mut out: Vec<MCElement> = candidates(c, d, budget)?.into_iter().filter(|x| mc_check(c, d, x)).collect();
    out.sort();
    Ok(out)
}

/// Pullback along `(f, a): C → C'`: `ξ ∘ f − a·id`.
pub fn mc_pullback(c: &PointedCurvedCoalgebra, d: &DgCategory, m: &CoalgebraMorphism, x: &MCElement) -> MCElement {
    let object_map: Vec<usize> = m.object_map.iter().map(|&u| x.object_map[u]).collect();
    let xi = (0..c.dim())
        .map(|i| {
            let mut v = m.linear[i].map_linear(|k| x.xi[*k].clone());
            if let Some(a) = m.functional.get(&i) {
                v.add_scaled(&d.identity_vector(object_map[c.basis[i].source]), &-a);
            }
            v
        })
        .collect();
    MCElement { object_map, xi }
}

/// A functor out of `Ω C` restricted to generators.
pub fn phi(functor: &CobarFunctor) -> MCElement {
    MCElement { object_map: functor.object_map.clone(), xi: functor.generator_images.clone() }
}

pub fn phi_inv(x: &MCElement) -> CobarFunctor {
    CobarFunctor { object_map: x.object_map.clone(), generator_images: x.xi.clone() }
}

/// `Hom(Ω C, D)` by brute force, each candidate checked as a functor on `Ω C` at length 2.
pub fn cobar_hom_enumerate(c: &PointedCurvedCoalgebra, d: &DgCategory, budget: u128) -> Result<Vec<CobarFunctor>, Error> {
    let omega = cobar(c, 2);
    let mut out: Vec<CobarFunctor> = candidates(c, d, budget)?
        .iter()
        .map(phi_inv)
        .filter(|f| validate_cobar_functor(&omega, c, d, f).is_valid())
        .collect();
    out.sort();
    Ok(out)
}

/// The tautological element `x_c` in `MC(C, Ω C)`, the image of the identity functor.
pub fn tautological(c: &PointedCurvedCoalgebra, omega: &DgCategory) -> MCElement {
    let one = c.field.one();
    MCElement {
        object_map: (0..c.objects.len()).collect(),
        xi: cobar_generators(omega, c).into_iter().map(|g| Vector::basis(g, one.clone())).collect(),
    }
}
