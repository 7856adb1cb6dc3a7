use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::adjunction::bar_twisting;
use super::bar::bar_reduced;
use super::cobar::{cobar, validate_cobar_functor};
use super::mc::phi_inv;
use crate::coalgebra::PointedCurvedCoalgebra;
use crate::dgcat::{default_retract, DgCategory, Truncation};
use crate::error::{Error, Report};
use crate::linalg::Echelon;
use crate::scalar::Field;
use crate::vector::Vector;

/// Longest cobar word length tried when looking for a complete truncation.
pub const COBAR_LENGTH_CAP: usize = 10;

/// One `(source, target, degree)` entry of the comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounitRow {
    pub source: usize,
    pub target: usize,
    pub degree: i32,
    pub cobar_dim: usize,
    pub target_dim: usize,
    /// The counit induces an isomorphism on this homology group.
    pub quasi_iso: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounitReport {
    pub bar_bound: usize,
    pub cobar_bound: usize,
    pub window: (i32, i32),
    /// Every cobar word in degrees `lo − 1 ..= hi + 1` fits in the cobar bound.
    pub complete: bool,
    pub functor: Report,
    pub rows: Vec<CounitRow>,
    /// Homology at `bar_bound − 1` agrees inside the window.
    pub stabilized: bool,
}

impl CounitReport {
    pub fn is_valid(&self) -> bool {
        self.complete
            && self.functor.is_valid()
            && self.rows.iter().all(|r| r.cobar_dim == r.target_dim && r.quasi_iso)
    }
}

fn kernel(field: Field, domain: &[usize], image: impl Fn(usize) -> Vector<usize>) -> Vec<Vector<usize>> {
    let mut rows: BTreeMap<usize, Vector<usize>> = BTreeMap::new();
    for (p, &i) in domain.iter().enumerate() {
        for (k, c) in &image(i) {
            rows.entry(*k).or_default().add_term(p, c.clone());
        }
    }
    Echelon::new(field, domain.len(), rows.into_values().collect())
        .kernel(field)
        .into_iter()
        .map(|v| v.map_keys(|p| domain[*p]))
        .collect()
}

fn rank(field: Field, vs: Vec<Vector<usize>>) -> usize {
    let n = vs.len();
    Echelon::new(field, n, vs).rank()
}

struct Homology {
    cycles: Vec<Vector<usize>>,
    boundaries: Vec<Vector<usize>>,
    dim: usize,
}

fn homology(d: &DgCategory, s: usize, t: usize, n: i32) -> Homology {
    let f = d.field;
    let here = d.hom_in_degree(s, t, n);
    let below = d.hom_in_degree(s, t, n - 1);
    let cycles = kernel(f, &here, |i| d.differential(i).clone());
    let boundaries: Vec<Vector<usize>> = below.iter().map(|&i| d.differential(i).clone()).collect();
    let dim = cycles.len() - rank(f, boundaries.clone());
    Homology { cycles, boundaries, dim }
}

/// Smallest cobar word bound making degrees `lo..=hi` complete for every pair.
pub fn cobar_bound_for(c: &PointedCurvedCoalgebra, lo: i32, hi: i32) -> Option<usize> {
    let gens: Vec<(usize, usize, i32)> = c.basis.iter().map(|b| (b.source, b.target, b.degree + 1)).collect();
    let n = c.objects.len();
    (2..=COBAR_LENGTH_CAP).find(|&l| {
        let tr = Truncation::for_generators(l, gens.clone(), n);
        (0..n).all(|s| (0..n).all(|t| (lo..=hi).all(|k| tr.complete(s, t, k))))
    })
}

fn dims(d: &DgCategory, bar_bound: usize, lo: i32, hi: i32) -> Result<BTreeMap<(usize, usize, i32), usize>, Error> {
    let b = bar_reduced(d, &default_retract(d)?, bar_bound)?;
    let l = cobar_bound_for(&b.coalgebra, lo - 1, hi + 1).unwrap_or(COBAR_LENGTH_CAP);
    let om = cobar(&b.coalgebra, l);
    let n = d.objects().len();
    let mut out = BTreeMap::new();
    for s in 0..n {
        for t in 0..n {
            for k in lo..=hi {
                out.insert((s, t, k), homology(&om, s, t, k).dim);
            }
        }
    }
    Ok(out)
}

/// Compares `Ω B_{≤W} D` with `D` through the counit `x_{[b]} ↦ −b` in degrees `lo..=hi`.
pub fn counit_check(d: &DgCategory, bar_bound: usize, window: (i32, i32)) -> Result<CounitReport, Error> {
    let (lo, hi) = window;
    let f = d.field;
    let v = default_retract(d)?;
    let b = bar_reduced(d, &v, bar_bound)?;
    let found = cobar_bound_for(&b.coalgebra, lo - 1, hi + 1);
    let cobar_bound = found.unwrap_or(COBAR_LENGTH_CAP);
    let om = cobar(&b.coalgebra, cobar_bound);
    let counit = phi_inv(&bar_twisting(d, &v, &b));
    let functor = validate_cobar_functor(&om, &b.coalgebra, d, &counit);
    let n = d.objects().len();
    let mut rows = Vec::new();
    for s in 0..n {
        for t in 0..n {
            for k in lo..=hi {
                let ho = homology(&om, s, t, k);
                let hd = homology(d, s, t, k);
                let mut span = hd.boundaries.clone();
                let base = rank(f, span.clone());
                span.extend(ho.cycles.iter().map(|z| counit.apply(&om, d, z)));
                let induced = rank(f, span) - base;
                rows.push(CounitRow {
                    source: s,
                    target: t,
                    degree: k,
                    cobar_dim: ho.dim,
                    target_dim: hd.dim,
                    quasi_iso: ho.dim == hd.dim && induced == hd.dim,
                });
            }
        }
    }
    let stabilized = if bar_bound > 1 {
        let here: BTreeMap<(usize, usize, i32), usize> =
            rows.iter().map(|r| ((r.source, r.target, r.degree), r.cobar_dim)).collect();
        dims(d, bar_bound - 1, lo, hi)? == here
    } else {
        false
    };
    Ok(CounitReport { bar_bound, cobar_bound, window, complete: found.is_some(), functor, rows, stabilized })
}
