use alloc::collections::BTreeMap;
use alloc::format;

use alloc::vec;
use alloc::vec::Vec;

use crate::coalgebra::PointedCurvedCoalgebra;
use crate::dgcat::{default_retract, DgCategory, Morphism, Retract};
use crate::error::Error;
use crate::scalar::Scalar;
use crate::vector::Vector;

/// A bar coalgebra with its words recorded in path order as indices into the basis of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarCoalgebra {
    pub coalgebra: PointedCurvedCoalgebra,
    pub words: Vec<Vec<usize>>,
    pub bound: usize,
    index: BTreeMap<Vec<usize>, usize>,
}

impl BarCoalgebra {
    pub fn word_index(&self, w: &[usize]) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Letter operations: differential, product, and the retract values used by `h`.
struct Letters<'a> {
    d: &'a DgCategory,
    letters: Vec<usize>,
    retract: Option<Retract>,
}

impl Letters<'_> {
    fn tilde(&self, b: usize) -> Vector<usize> {
        let one = self.d.field.one();
        let mut v = Vector::basis(b, one);
        if let Some(r) = &self.retract {
            let m = self.d.morphism(b);
            if m.source == m.target {
                let c = r.eval(self.d, &v);
                v.add_scaled(&self.d.identity_vector(m.source), &-c);
            }
        }
        v
    }

    /// Splits `x` into its letter part and, when reduced, the retract value.
    fn split(&self, x: &Vector<usize>) -> (Vector<usize>, Scalar) {
        match &self.retract {
            None => (x.clone(), self.d.field.zero()),
            Some(r) => (x.filter(|i| !self.d.is_identity(*i)), r.eval(self.d, x)),
        }
    }

    fn dl(&self, b: usize) -> (Vector<usize>, Scalar) {
        self.split(&self.d.d(&self.tilde(b)))
    }

    fn mul(&self, x: usize, y: usize) -> (Vector<usize>, Scalar) {
        self.split(&self.d.mu(&self.tilde(x), &self.tilde(y)))
    }
}

fn build(l: Letters, bound: usize) -> BarCoalgebra {
    let d = l.d;
    let f = d.field;
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = l.letters.iter().map(|&b| vec![b]).collect();
    for _ in 0..bound {
        if layer.is_empty() {
            break;
        }
        layer.sort_by_key(|w| (d.morphism(w[0]).source, w.clone()));
        words.extend(layer.iter().cloned());
        let mut next = Vec::new();
        for w in &layer {
            let end = d.morphism(*w.last().unwrap()).target;
            for &b in &l.letters {
                if d.morphism(b).source == end {
                    let mut w2 = w.clone();
                    w2.push(b);
                    next.push(w2);
                }
            }
        }
        layer = next;
    }
    let index: BTreeMap<Vec<usize>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let letter_deg = |b: usize| d.morphism(b).degree as i64 - 1;
    let basis: Vec<Morphism> = words
        .iter()
        .map(|w| Morphism {
            label: format!(
                "[{}]",
                w.iter().map(|b| d.morphism(*b).label.as_str()).collect::<Vec<_>>().join("|")
            ),
            degree: w.iter().map(|b| letter_deg(*b) as i32).sum(),
            source: d.morphism(w[0]).source,
            target: d.morphism(*w.last().unwrap()).target,
        })
        .collect();
    let mut coproduct = Vec::with_capacity(words.len());
    let mut differential = Vec::with_capacity(words.len());
    let mut curvature = Vector::zero();
    for (x, w) in words.iter().enumerate() {
        let mut cop = Vector::zero();
        for i in 1..w.len() {
            cop.add_term((index[&w[..i]], index[&w[i..]]), f.one());
        }
        coproduct.push(cop);
        let mut dv: Vector<usize> = Vector::zero();
        let mut eps = 0i64;
        for i in 0..w.len() {
            let sign = f.sign(eps);
            let (db, hv) = l.dl(w[i]);
            for (b, c) in &db {
                let mut w2 = w.clone();
                w2[i] = *b;
                dv.add_term(index[&w2], -(&sign * c));
            }
            if w.len() == 1 && !hv.is_zero() {
                curvature.add_term(x, -hv);
            }
            if i + 1 < w.len() {
                let s2 = &sign * &f.sign(d.morphism(w[i]).degree as i64 + 1);
                let (m, hv) = l.mul(w[i], w[i + 1]);
                for (b, c) in &m {
                    let mut w2 = w[..i].to_vec();
                    w2.push(*b);
                    w2.extend_from_slice(&w[i + 2..]);
                    dv.add_term(index[&w2], &s2 * c);
                }
                if w.len() == 2 && !hv.is_zero() {
                    curvature.add_term(x, &s2 * &hv);
                }
            }
            eps += letter_deg(w[i]);
        }
        differential.push(dv);
    }
    let coalgebra = PointedCurvedCoalgebra::new(f, d.objects().to_vec(), basis, coproduct, differential, curvature)
        .expect("bar words are well formed");
    BarCoalgebra { coalgebra, words, bound, index }
}

/// Words over the full basis, identities included; curvature zero.
pub fn bar_nonreduced(d: &DgCategory, bound: usize) -> BarCoalgebra {
    let letters = (0..d.basis().len()).collect();
    build(Letters { d, letters, retract: None }, bound)
}

/// Words over `Ā`, the non-identity basis elements `b − v(b)·id`.
pub fn bar_reduced(d: &DgCategory, v: &Retract, bound: usize) -> Result<BarCoalgebra, Error> {
    let n = d.objects().len();
    if let Some(s) = (0..n).find(|&s| d.identity(s).is_none()) {
        return Err(Error::NotSplit { object: d.objects()[s].clone() });
    }
    if v.functionals.len() != n {
        return Err(Error::IllFormed("one retract functional per object".into()));
    }
    let letters = (0..d.basis().len()).filter(|&i| !d.is_identity(i)).collect();
    Ok(build(Letters { d, letters, retract: Some(v.clone()) }, bound))
}

/// Reduced bar with the default retract.
pub fn bar(d: &DgCategory, bound: usize) -> Result<BarCoalgebra, Error> {
    bar_reduced(d, &default_retract(d)?, bound)
}

