//! The uncurving `H A = A⟨η⟩` with `d_H a = da − [η, a]` and `d_H η = h − η²`,
//! presented on normal-form words and truncated as a quotient.
//!
//! Letters are generators of `A` and components `η_{st} = e_s η e_t`. In
//! [`EtaMode::Pointed`] only the diagonal components exist (uncurving over `k^S`);
//! in [`EtaMode::Free`] all of them do (uncurving over `k`). Normal-form words never
//! contain two adjacent generator letters.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::curved::{AElem, AlgebraMorphism, CurvedAlgebra};
use crate::dgcat::{render, DgCategory, Morphism};
use crate::error::Error;
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A(usize),
    Eta(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HWord {
    pub start: usize,
    pub letters: Vec<Letter>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaMode {
    Pointed,
    Free,
}

/// Words above the bound are set to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HBound {
    EtaCount(usize),
    /// Generator weights plus one per η.
    Weight { weights: Vec<usize>, bound: usize },
}

pub struct Uncurving<'a> {
    pub alg: &'a CurvedAlgebra,
    pub mode: EtaMode,
    pub bound: HBound,
}

impl<'a> Uncurving<'a> {
    pub fn new(alg: &'a CurvedAlgebra, mode: EtaMode, bound: HBound) -> Uncurving<'a> {
        Uncurving { alg, mode, bound }
    }

    fn allowed(&self, s: usize, t: usize) -> bool {
        self.mode == EtaMode::Free || s == t
    }

    fn etas_from(&self, s: usize) -> Vec<usize> {
        (0..self.alg.objects.len()).filter(|&t| self.allowed(s, t)).collect()
    }

    fn etas_into(&self, t: usize) -> Vec<usize> {
        (0..self.alg.objects.len()).filter(|&s| self.allowed(s, t)).collect()
    }

    pub fn letter_source(&self, l: Letter) -> usize {
        match l {
            Letter::A(i) => self.alg.gens[i].source,
            Letter::Eta(s, _) => s,
        }
    }

    pub fn letter_target(&self, l: Letter) -> usize {
        match l {
            Letter::A(i) => self.alg.gens[i].target,
            Letter::Eta(_, t) => t,
        }
    }

    pub fn letter_degree(&self, l: Letter) -> i32 {
        match l {
            Letter::A(i) => self.alg.gens[i].degree,
            Letter::Eta(..) => 1,
        }
    }

    pub fn end(&self, w: &HWord) -> usize {
        w.letters.last().map_or(w.start, |l| self.letter_target(*l))
    }

    pub fn word_degree(&self, w: &HWord) -> i32 {
        w.letters.iter().map(|l| self.letter_degree(*l)).sum()
    }

    pub fn eta_count(w: &HWord) -> usize {
        w.letters.iter().filter(|l| matches!(l, Letter::Eta(..))).count()
    }

    fn weight(&self, w: &HWord) -> usize {
        match &self.bound {
            HBound::EtaCount(_) => Self::eta_count(w),
            HBound::Weight { weights, .. } => w
                .letters
                .iter()
                .map(|l| match l {
                    Letter::A(i) => weights[*i],
                    Letter::Eta(..) => 1,
                })
                .sum(),
        }
    }

    pub fn within(&self, w: &HWord) -> bool {
        let b = match &self.bound {
            HBound::EtaCount(b) => *b,
            HBound::Weight { bound, .. } => *bound,
        };
        self.weight(w) <= b
    }

    pub fn empty(&self, s: usize) -> HWord {
        HWord { start: s, letters: Vec::new() }
    }

    pub fn letter_word(&self, l: Letter) -> HWord {
        HWord {
            start: self.letter_source(l),
            letters: alloc::vec![l],
        }
    }

    pub fn from_alg(&self, v: &Vector<AElem>) -> Vector<HWord> {
        let mut r = Vector::zero();
        for (a, c) in v {
            let w = match a {
                AElem::Idem(s) => self.empty(*s),
                AElem::Gen(i) => self.letter_word(Letter::A(*i)),
            };
            if self.within(&w) {
                r.add_term(w, c.clone());
            }
        }
        r
    }

    /// `η = Σ η_{st}` over the allowed components.
    pub fn eta(&self) -> Vector<HWord> {
        let n = self.alg.objects.len();
        let mut r = Vector::zero();
        for s in 0..n {
            for t in 0..n {
                if self.allowed(s, t) {
                    let w = self.letter_word(Letter::Eta(s, t));
                    if self.within(&w) {
                        r.add_term(w, self.alg.field.one());
                    }
                }
            }
        }
        r
    }

    fn push(&self, r: &mut Vector<HWord>, w: HWord, c: crate::scalar::Scalar) {
        if self.within(&w) {
            r.add_term(w, c);
        }
    }

    pub fn concat(&self, u: &HWord, v: &HWord) -> Vector<HWord> {
        let mut r = Vector::zero();
        let one = self.alg.field.one();
        if self.end(u) != v.start {
            return r;
        }
        match (u.letters.last(), v.letters.first()) {
            (Some(Letter::A(x)), Some(Letter::A(y))) => {
                let p = self.alg.mul_basis(AElem::Gen(*x), AElem::Gen(*y));
                for (k, c) in &p {
                    let mut letters = u.letters[..u.letters.len() - 1].to_vec();
                    if let AElem::Gen(z) = k {
                        letters.push(Letter::A(*z));
                    }
                    letters.extend_from_slice(&v.letters[1..]);
                    self.push(&mut r, HWord { start: u.start, letters }, c.clone());
                }
            }
            _ => {
                let mut letters = u.letters.clone();
                letters.extend_from_slice(&v.letters);
                self.push(&mut r, HWord { start: u.start, letters }, one);
            }
        }
        r
    }

    pub fn mul(&self, x: &Vector<HWord>, y: &Vector<HWord>) -> Vector<HWord> {
        let mut r = Vector::zero();
        for (u, cu) in x {
            for (v, cv) in y {
                r.add_scaled(&self.concat(u, v), &(cu * cv));
            }
        }
        r
    }

    fn eta_word(&self, s: usize, t: usize) -> Vector<HWord> {
        let mut r = Vector::zero();
        self.push(&mut r, self.letter_word(Letter::Eta(s, t)), self.alg.field.one());
        r
    }

    pub fn d_letter(&self, l: Letter) -> Vector<HWord> {
        let f = self.alg.field;
        match l {
            Letter::A(i) => {
                let a = AElem::Gen(i);
                let (s, t) = (self.alg.source(a), self.alg.target(a));
                let va = self.from_alg(&self.alg.element(a));
                let mut r = self.from_alg(self.alg.d_basis(a));
                for u in self.etas_into(s) {
                    r.add_scaled(&self.mul(&self.eta_word(u, s), &va), &-f.one());
                }
                let sign = f.sign(self.alg.degree(a) as i64);
                for u in self.etas_from(t) {
                    r.add_scaled(&self.mul(&va, &self.eta_word(t, u)), &sign);
                }
                r
            }
            Letter::Eta(s, t) => {
                let h = self.alg.component(&self.alg.curvature, s, t);
                let mut r = self.from_alg(&h);
                if self.mode == EtaMode::Pointed {
                    r.add_scaled(&self.mul(&self.eta_word(s, s), &self.eta_word(s, s)), &-f.one());
                    return r;
                }
                // d(e_s η e_t) with d_H e_s = d e_s − [η, e_s]
                let es = self.from_alg(&self.alg.element(AElem::Idem(s)));
                let et = self.from_alg(&self.alg.element(AElem::Idem(t)));
                let left = self.from_alg(self.alg.d_basis(AElem::Idem(s)));
                let right = self.from_alg(self.alg.d_basis(AElem::Idem(t)));
                r.add(&self.mul(&self.mul(&left, &self.eta()), &et));
                r.add_scaled(&self.mul(&self.mul(&es, &self.eta()), &right), &-f.one());
                let n = self.alg.objects.len();
                for u in 0..n {
                    r.add(&self.mul(&self.eta_word(s, u), &self.eta_word(u, t)));
                    r.add_scaled(&self.mul(&self.eta_word(u, s), &self.eta_word(s, t)), &-f.one());
                    r.add_scaled(&self.mul(&self.eta_word(s, t), &self.eta_word(t, u)), &-f.one());
                }
                r
            }
        }
    }

    /// `d_H e_s = d e_s − [η, e_s]`.
    pub fn d_empty(&self, s: usize) -> Vector<HWord> {
        let f = self.alg.field;
        let mut r = self.from_alg(self.alg.d_basis(AElem::Idem(s)));
        for u in self.etas_into(s) {
            r.add_scaled(&self.eta_word(u, s), &-f.one());
        }
        for u in self.etas_from(s) {
            r.add_scaled(&self.eta_word(s, u), &f.one());
        }
        r
    }

    pub fn d_word(&self, w: &HWord) -> Vector<HWord> {
        if w.letters.is_empty() {
            return self.d_empty(w.start);
        }
        let f = self.alg.field;
        let mut r = Vector::zero();
        let mut deg: i64 = 0;
        let mut at = w.start;
        for (i, l) in w.letters.iter().enumerate() {
            let prefix = Vector::basis(
                HWord { start: w.start, letters: w.letters[..i].to_vec() },
                f.one(),
            );
            let target = self.letter_target(*l);
            let suffix = Vector::basis(
                HWord { start: target, letters: w.letters[i + 1..].to_vec() },
                f.one(),
            );
            // empty prefixes and suffixes are not idempotents here: η leaves the component
            let mut mid = self.d_letter(*l);
            if i > 0 {
                mid = self.mul(&prefix, &mid);
            }
            if i + 1 < w.letters.len() {
                mid = self.mul(&mid, &suffix);
            }
            r.add_scaled(&mid, &f.sign(deg));
            deg += self.letter_degree(*l) as i64;
            at = target;
        }
        let _ = at;
        r
    }

    pub fn d(&self, v: &Vector<HWord>) -> Vector<HWord> {
        v.map_linear(|w| self.d_word(w))
    }

    /// One-letter words: generators of `A` and allowed η components.
    pub fn generators(&self) -> Vec<HWord> {
        let n = self.alg.objects.len();
        let mut out: Vec<HWord> = (0..self.alg.gens.len())
            .map(|i| self.letter_word(Letter::A(i)))
            .collect();
        for s in 0..n {
            for t in 0..n {
                if self.allowed(s, t) {
                    out.push(self.letter_word(Letter::Eta(s, t)));
                }
            }
        }
        out.retain(|w| self.within(w));
        out
    }

    pub fn letter_label(&self, l: Letter) -> String {
        match l {
            Letter::A(i) => self.alg.gens[i].label.clone(),
            Letter::Eta(s, t) => match self.mode {
                EtaMode::Pointed => format!("η_{}", self.alg.objects[s]),
                EtaMode::Free => format!("η_{},{}", self.alg.objects[s], self.alg.objects[t]),
            },
        }
    }

    pub fn word_label(&self, w: &HWord) -> String {
        if w.letters.is_empty() {
            return format!("id_{}", self.alg.objects[w.start]);
        }
        w.letters
            .iter()
            .map(|l| self.letter_label(*l))
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn render(&self, v: &Vector<HWord>) -> String {
        render(v, |w| self.word_label(w))
    }

    /// Every normal-form word within the bound, by start object then word.
    pub fn basis(&self) -> Vec<HWord> {
        let mut out = Vec::new();
        let mut stack: Vec<HWord> = (0..self.alg.objects.len()).map(|s| self.empty(s)).collect();
        while let Some(w) = stack.pop() {
            let end = self.end(&w);
            let last_is_a = matches!(w.letters.last(), Some(Letter::A(_)));
            let mut nexts = Vec::new();
            for u in self.etas_from(end) {
                nexts.push(Letter::Eta(end, u));
            }
            if !last_is_a {
                for (i, g) in self.alg.gens.iter().enumerate() {
                    if g.source == end {
                        nexts.push(Letter::A(i));
                    }
                }
            }
            for l in nexts {
                let mut letters = w.letters.clone();
                letters.push(l);
                let nw = HWord { start: w.start, letters };
                if self.within(&nw) {
                    stack.push(nw);
                }
            }
            out.push(w);
        }
        out.sort();
        out
    }

    /// The truncated `H A` as a category; requires a bound that makes it finite.
    pub fn to_category(&self) -> Result<DgCategory, Error> {
        let words = self.basis();
        let index: BTreeMap<HWord, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let to_idx = |v: &Vector<HWord>| v.map_keys(|w| index[w]);
        let basis = words
            .iter()
            .map(|w| Morphism {
                label: self.word_label(w),
                degree: self.word_degree(w),
                source: w.start,
                target: self.end(w),
            })
            .collect();
        let identities = (0..self.alg.objects.len())
            .map(|s| index.get(&self.empty(s)).copied())
            .collect();
        let differential = words
            .iter()
            .map(|w| to_idx(&self.d_word(w)))
            .collect();
        let mut products = Vec::new();
        for (i, u) in words.iter().enumerate() {
            if u.letters.is_empty() {
                continue;
            }
            for (j, v) in words.iter().enumerate() {
                if v.letters.is_empty() || self.end(u) != v.start {
                    continue;
                }
                let p = self.concat(u, v);
                if !p.is_zero() {
                    products.push(((i, j), to_idx(&p)));
                }
            }
        }
        DgCategory::from_table(
            self.alg.field,
            self.alg.objects.clone(),
            basis,
            identities,
            differential,
            products,
        )
    }
}

/// `H A → H B` induced by `(f, b)`: `a ↦ f(a)`, `η_{st} ↦ f(e_s)(b + η)f(e_t)`.
pub fn map_uncurved(
    ha: &Uncurving,
    hb: &Uncurving,
    m: &AlgebraMorphism,
    v: &Vector<HWord>,
) -> Vector<HWord> {
    let f = ha.alg.field;
    let mut r = Vector::zero();
    for (w, c) in v {
        let mut acc = hb.from_alg(m.apply_basis(AElem::Idem(w.start)));
        for l in &w.letters {
            let img = match l {
                Letter::A(i) => hb.from_alg(m.apply_basis(AElem::Gen(*i))),
                Letter::Eta(s, t) => {
                    let mut mid = hb.from_alg(&m.b);
                    mid.add(&hb.eta());
                    let left = hb.from_alg(m.apply_basis(AElem::Idem(*s)));
                    let right = hb.from_alg(m.apply_basis(AElem::Idem(*t)));
                    hb.mul(&hb.mul(&left, &mid), &right)
                }
            };
            acc = hb.mul(&acc, &img);
        }
        r.add_scaled(&acc, c);
    }
    let _ = f;
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curved::mc_check_uncurved;
    use crate::scalar::Field;

    fn k_alg(f: Field) -> CurvedAlgebra {
        CurvedAlgebra::new(f, alloc::vec!["*".into()], Vec::new(), Vec::new(), alloc::vec![Vector::zero()], Vec::new(), Vector::zero()).unwrap()
    }

    #[test]
    fn uncurving_k() {
        let f = Field::Rational;
        let a = k_alg(f);
        let h = Uncurving::new(&a, EtaMode::Pointed, HBound::EtaCount(3));
        let eta = h.eta();
        let d_eta = h.d(&eta);
        assert_eq!(d_eta, h.mul(&eta, &eta).neg());
        assert!(h.d(&d_eta).is_zero());
        assert_eq!(h.basis().len(), 4);
        let cat = h.to_category().unwrap();
        assert_eq!(cat.basis().len(), 4);
    }

    #[test]
    fn eps_has_no_mc_at_eta_count_two() {
        let f = Field::Prime(2);
        let e = Morphism { label: "e".into(), degree: 2, source: 0, target: 0 };
        let eps = Vector::basis(AElem::Gen(0), f.one());
        let a = CurvedAlgebra::new(f, alloc::vec!["*".into()], alloc::vec![e], Vec::new(), alloc::vec![Vector::zero()], alloc::vec![Vector::zero()], eps).unwrap();
        // the degree-one part of A is zero, so the only candidate is a = 0
        assert!(!mc_check_uncurved(&a, &Vector::zero()));
        let h = Uncurving::new(&a, EtaMode::Free, HBound::EtaCount(2));
        let d = h.d_letter(Letter::A(0));
        assert!(d.keys().all(|w| Uncurving::eta_count(w) <= 1));
    }
}
