use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use koszul_core::barcobar::{
    bar_hom_enumerate, bar_reduced, cobar, cobar_hom_enumerate, mc_enumerate, phi, phi_inv, psi, psi_inv,
};
use koszul_core::coalgebra::{dualize, PointedCurvedCoalgebra};
use koszul_core::curved::{
    check_uncurved_map, compose_algebra_morphisms, endomorphism_algebra, mc_check, mc_check_uncurved, twist,
    validate_algebra_morphism, all_vectors, AElem, AlgebraMorphism, CurvedAlgebra,
};
use koszul_core::dgcat::default_retract;
use koszul_core::simplicial::{
    cochain_algebra, fixtures as sset_fixtures, quotient_by_labels, standard_simplex, twisted_chains,
    twisted_cochain_algebra, untwisting_pair,
};
use koszul_core::{fixtures, DgCategory, Field, Vector};

use super::BUDGET;
use crate::gen;

const F2: Field = Field::Prime(2);
const F5: Field = Field::Prime(5);
const Q: Field = Field::Rational;

pub fn cobar_squares_to_zero(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let (mut curved, mut checked) = (0, 0);
    for i in 0..200 {
        let f = [F2, F5, Q][i % 3];
        let c = gen::random_coalgebra(rng, f);
        if c.objects.len() > 2 || c.dim() > 4 || c.basis.iter().any(|b| b.degree.abs() > 3) {
            return Err(format!("instance {i} is outside the sampling range"));
        }
        curved += usize::from(c.is_curved());
        let om = cobar(&c, 4);
        for (x, m) in om.basis().iter().enumerate() {
            if !om.exact_degree(m.source, m.target, m.degree + 1) {
                continue;
            }
            checked += 1;
            if !om.d(om.differential(x)).is_zero() {
                return Err(format!("instance {i} over {f}: d² ≠ 0 on {}", m.label));
            }
        }
    }
    Ok(format!("200 coalgebras ({curved} curved), d² = 0 on {checked} basis elements"))
}

/// MC elements, cobar functors and bar maps are in bijection through `phi` and `psi`.
pub fn bijection(c: &PointedCurvedCoalgebra, d: &DgCategory, budget: u128) -> Result<usize, String> {
    let v = default_retract(d).map_err(|e| e.to_string())?;
    let conil = c.conilpotence_degree().ok_or("coalgebra is not conilpotent")?.max(1);
    let b = bar_reduced(d, &v, conil).map_err(|e| e.to_string())?;
    let mc = mc_enumerate(c, d, budget).map_err(|e| e.to_string())?;
    let functors = cobar_hom_enumerate(c, d, budget).map_err(|e| e.to_string())?;
    let homs = bar_hom_enumerate(c, &b, budget).map_err(|e| e.to_string())?;
    if mc.len() != functors.len() || mc.len() != homs.len() {
        return Err(format!("{} MC elements, {} cobar functors, {} bar maps", mc.len(), functors.len(), homs.len()));
    }
    for x in &mc {
        if &phi(&phi_inv(x)) != x {
            return Err("phi(phi_inv(x)) ≠ x".into());
        }
        let m = psi(c, d, &v, &b, x).map_err(|e| e.to_string())?;
        if !homs.contains(&m) || &psi_inv(c, d, &v, &b, &m) != x {
            return Err("psi is not inverse to psi_inv on an MC element".into());
        }
    }
    for m in &homs {
        let x = psi_inv(c, d, &v, &b, m);
        if psi(c, d, &v, &b, &x).map_err(|e| e.to_string())? != *m {
            return Err("psi(psi_inv(m)) ≠ m".into());
        }
    }
    if functors.iter().any(|g| !mc.contains(&phi(g))) {
        return Err("phi of a cobar functor is not an MC element".into());
    }
    Ok(mc.len())
}

pub fn triple_bijection(_: &mut ChaCha8Rng) -> Result<String, String> {
    let family = gen::coalgebra_family_f2(2);
    let ds = [fixtures::k(F2), fixtures::s_n(F2, 1), fixtures::a2(F2), fixtures::k_eps(F2, 0)];
    let curved = family.iter().filter(|c| c.is_curved()).count();
    let mut total = 0;
    for (i, c) in family.iter().enumerate() {
        for (j, d) in ds.iter().enumerate() {
            total += bijection(c, d, BUDGET).map_err(|e| format!("coalgebra {i}, category {j}: {e}"))?;
        }
    }
    Ok(format!("{} coalgebras ({curved} curved) x 4 categories, {total} MC elements", family.len()))
}

pub fn simplicial_chains(_: &mut ChaCha8Rng) -> Result<String, String> {
    for f in [F2, F5, Q] {
        for n in 0..=5 {
            let k = standard_simplex(n);
            let c = twisted_chains(f, &k);
            if !c.curvature.is_zero() {
                return Err(format!("Δ^{n} over {f} is curved"));
            }
            for (i, b) in c.basis.iter().enumerate() {
                let x = k.index_of(&b.label).ok_or("label lost")?;
                let mut expected = Vector::zero();
                for j in 1..k.simplices[x].dim {
                    let face = k.face(&k.elem(x), j);
                    let y = c.index_of(&k.simplices[face.base].label).ok_or("face label lost")?;
                    expected.add_term(y, f.sign(j as i64));
                }
                if c.differential[i] != expected {
                    return Err(format!("Δ^{n} over {f}: d({}) disagrees with the subset formula", b.label));
                }
            }
        }
    }
    let all = sset_fixtures();
    for (name, k) in &all {
        for f in [F2, F5, Q] {
            let plain = cochain_algebra(f, k);
            let tw = twisted_cochain_algebra(f, k);
            let (down, up) = untwisting_pair(f, k);
            let ok = validate_algebra_morphism(&tw, &plain, &down).is_valid()
                && validate_algebra_morphism(&plain, &tw, &up).is_valid()
                && compose_algebra_morphisms(&down, &up) == AlgebraMorphism::identity(&plain)
                && compose_algebra_morphisms(&up, &down) == AlgebraMorphism::identity(&tw);
            if !ok {
                return Err(format!("untwisting fails on {name} over {f}"));
            }
        }
    }
    let k = quotient_by_labels(&standard_simplex(2), &["02"]).map_err(|e| e.to_string())?;
    for f in [F2, F5, Q] {
        if twisted_chains(f, &k).curvature.is_zero() {
            return Err(format!("h = 0 on Δ²/{{02}} over {f}"));
        }
    }
    Ok(format!("subset formula on Δ^0..Δ^5, untwisting on {} fixtures, h ≠ 0 on Δ²/{{02}}", all.len()))
}

fn mc_family() -> Vec<CurvedAlgebra> {
    let mut out: Vec<CurvedAlgebra> = gen::coalgebra_family_f2(2).iter().map(dualize).collect();
    for (_, k) in sset_fixtures() {
        let a = cochain_algebra(F2, &k);
        if a.basis_in_degree(1).len() <= 3 {
            out.push(twisted_cochain_algebra(F2, &k));
            out.push(a);
        }
    }
    for degrees in [vec![0, 1], vec![0, 0], vec![0, 1, 2], vec![-1, 0, 1]] {
        let n = degrees.len();
        let mut slots = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if degrees[i] == degrees[j] + 1 {
                    slots.push((i, j));
                }
            }
        }
        for mask in 0..(1u32 << slots.len()) {
            let delta: Vec<(usize, usize, i64)> =
                slots.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &(i, j))| (i, j, 1)).collect();
            if let Ok(a) = endomorphism_algebra(F2, &degrees, &delta) {
                out.push(a);
            }
        }
    }
    out
}

fn mc_agreement() -> Result<(usize, usize, usize), String> {
    let family = mc_family();
    let (mut algebras, mut elements, mut solutions) = (0, 0, 0);
    for (i, a) in family.iter().enumerate() {
        let a1 = a.basis_in_degree(1);
        if a1.len() > 3 {
            continue;
        }
        algebras += 1;
        for x in all_vectors(F2, &a1, BUDGET).map_err(|e| e.to_string())? {
            elements += 1;
            let curved = mc_check(a, &x);
            if curved != mc_check_uncurved(a, &x) {
                return Err(format!("algebra {i}: the two MC tests disagree on {}", a.render(&x)));
            }
            solutions += usize::from(curved);
        }
    }
    Ok((algebras, elements, solutions))
}

fn perturb(rng: &mut ChaCha8Rng, a: &CurvedAlgebra, v: &Vector<AElem>, degree: i32, s: usize, t: usize) -> Vector<AElem> {
    let f = a.field;
    let choices: Vec<AElem> =
        a.basis_in_degree(degree).into_iter().filter(|&e| a.source(e) == s && a.target(e) == t).collect();
    let mut out = v.clone();
    if let Some(&e) = choices.choose(rng) {
        out.add_term(e, gen::nonzero_scalar(rng, f));
    }
    out
}

fn morphism_agreement(rng: &mut ChaCha8Rng) -> Result<(usize, usize), String> {
    let mut valid = 0;
    for i in 0..200 {
        let f = [F2, F5, Q][i % 3];
        let a = dualize(&gen::random_coalgebra(rng, f));
        let ones = a.basis_in_degree(1);
        let mut b0 = Vector::zero();
        for &e in &ones {
            if rng.gen_bool(0.5) {
                b0.add_term(e, gen::scalar(rng, f));
            }
        }
        let src = twist(&a, &b0);
        let mut m = AlgebraMorphism::identity(&a).with_b(b0.clone());
        match rng.gen_range(0..3) {
            0 => {}
            1 => {
                let s = if ones.is_empty() { 0 } else { a.source(ones[rng.gen_range(0..ones.len())]) };
                m.b = perturb(rng, &a, &m.b, 1, s, s);
            }
            _ => {
                let g = rng.gen_range(0..m.gen.len().max(1));
                if let Some(v) = m.gen.get(g).cloned() {
                    let e = AElem::Gen(g);
                    m.gen[g] = perturb(rng, &a, &v, a.degree(e), a.source(e), a.target(e));
                }
            }
        }
        let curved = validate_algebra_morphism(&src, &a, &m).is_valid();
        if curved != check_uncurved_map(&src, &a, &m).is_valid() {
            return Err(format!("candidate {i} over {f}: the two morphism tests disagree (curved says {curved})"));
        }
        valid += usize::from(curved);
    }
    Ok((200, valid))
}

pub fn uncurved_forms(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let (algebras, elements, solutions) = mc_agreement()?;
    let (candidates, valid) = morphism_agreement(rng)?;
    Ok(format!(
        "{elements} elements of {algebras} algebras ({solutions} MC); {candidates} morphism candidates ({valid} valid)"
    ))
}
