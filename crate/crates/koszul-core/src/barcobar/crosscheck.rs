use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::bar::{bar, bar_nonreduced, bar_reduced, BarCoalgebra};
use crate::coalgebra::dualize;
use crate::curved::{compose_algebra_morphisms, validate_algebra_morphism, AElem, AlgebraMorphism};
use crate::dgcat::{validate_retract, DgCategory, Retract};
use crate::error::{Error, Report};
use crate::uncurve::{EtaMode, HBound, HWord, Letter, Uncurving};
use crate::vector::Vector;

/// Compares the uncurving of the dual reduced bar with the dual non-reduced bar.
///
/// The map sends a generator letter to its word, `η_s` to `[id_s]`, and
/// concatenates; it must be a bijection on bases commuting with products and
/// differentials.
pub fn reduced_nonreduced_check(d: &DgCategory, bound: usize) -> Result<Report, Error> {
    let red = bar(d, bound)?;
    let nr = bar_nonreduced(d, bound);
    let ra = dualize(&red.coalgebra);
    let na = dualize(&nr.coalgebra);
    let weights = red.words.iter().map(|w| w.len()).collect();
    let h = Uncurving::new(&ra, EtaMode::Pointed, HBound::Weight { weights, bound });
    let phi_word = |w: &HWord| -> Option<AElem> {
        if w.letters.is_empty() {
            return Some(AElem::Idem(w.start));
        }
        let mut full = Vec::new();
        for l in &w.letters {
            match l {
                Letter::A(i) => full.extend_from_slice(&red.words[*i]),
                Letter::Eta(s, _) => full.push(d.identity(*s)?),
            }
        }
        nr.word_index(&full).map(AElem::Gen)
    };
    let phi = |v: &Vector<HWord>| -> Vector<AElem> {
        let mut r = Vector::zero();
        for (w, c) in v {
            if let Some(a) = phi_word(w) {
                r.add_term(a, c.clone());
            }
        }
        r
    };
    let mut r = Report::new();
    let basis = h.basis();
    let mut image: BTreeMap<AElem, usize> = BTreeMap::new();
    for (i, w) in basis.iter().enumerate() {
        match phi_word(w) {
            Some(a) => {
                if image.insert(a, i).is_some() {
                    r.fail("not injective", h.word_label(w));
                }
            }
            None => r.fail("no image", h.word_label(w)),
        }
    }
    if image.len() != na.basis().len() {
        r.fail(
            "not surjective",
            format!("{} words against {} basis elements", image.len(), na.basis().len()),
        );
    }
    if !r.is_valid() {
        return Ok(r);
    }
    let one = d.field.one();
    for w in &basis {
        let v = Vector::basis(w.clone(), one.clone());
        let pw = phi(&v);
        if phi(&h.d(&v)) != na.d(&pw) {
            r.fail("differential", h.word_label(w));
        }
        for l in h.generators() {
            if h.end(&l) != w.start {
                continue;
            }
            let lv = Vector::basis(l.clone(), one.clone());
            if phi(&h.mul(&lv, &v)) != na.mul(&phi(&lv), &pw) {
                r.fail("product", format!("({},{})", h.word_label(&l), h.word_label(w)));
            }
        }
    }
    Ok(r)
}

/// The change-of-retract isomorphism between dual bar algebras, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractIsomorphism {
    /// The first bar is the source of `forward`.
    pub v_to_w: bool,
    pub forward: AlgebraMorphism,
    pub inverse: AlgebraMorphism,
    pub report: Report,
}

fn difference(bv: &BarCoalgebra, d: &DgCategory, v: &Retract, w: &Retract) -> Vector<AElem> {
    let mut b = Vector::zero();
    for (i, word) in bv.words.iter().enumerate() {
        if word.len() != 1 {
            continue;
        }
        let x = Vector::basis(word[0], d.field.one());
        let c = &v.eval(d, &x) - &w.eval(d, &x);
        b.add_term(AElem::Gen(i), c);
    }
    b
}

/// `(id, v* − w*)` between the dual bars built from two retracts.
pub fn retract_independence(d: &DgCategory, v: &Retract, w: &Retract, bound: usize) -> Result<RetractIsomorphism, Error> {
    let mut pre = validate_retract(d, v);
    pre.merge(validate_retract(d, w));
    if !pre.is_valid() {
        return Err(Error::IllFormed(format!("{pre}")));
    }
    let bv = bar_reduced(d, v, bound)?;
    let bw = bar_reduced(d, w, bound)?;
    let (av, aw) = (dualize(&bv.coalgebra), dualize(&bw.coalgebra));
    let diff = difference(&bv, d, v, w);
    let mut fallback = None;
    for (v_to_w, src, tgt) in [(true, &av, &aw), (false, &aw, &av)] {
        let b = if v_to_w { diff.clone() } else { diff.neg() };
        let forward = AlgebraMorphism::identity(src).with_b(b.clone());
        let inverse = AlgebraMorphism::identity(tgt).with_b(b.neg());
        let mut report = validate_algebra_morphism(src, tgt, &forward);
        report.merge(validate_algebra_morphism(tgt, src, &inverse));
        let round = compose_algebra_morphisms(&inverse, &forward);
        if round != AlgebraMorphism::identity(src) {
            report.fail("inverse", "composite is not the identity".into());
        }
        let iso = RetractIsomorphism { v_to_w, forward, inverse, report };
        if iso.report.is_valid() {
            return Ok(iso);
        }
        fallback.get_or_insert(iso);
    }
    Ok(fallback.unwrap())
}
