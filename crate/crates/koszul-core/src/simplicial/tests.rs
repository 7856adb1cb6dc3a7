use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::coalgebra::{compose_coalgebra_morphisms, validate_coalgebra_morphism, validate_pointed_curved_coalgebra, CoalgebraMorphism};
use crate::curved::{compose_algebra_morphisms, validate_algebra_morphism, validate_curved_algebra, AlgebraMorphism};
use crate::scalar::Field;
use crate::vector::Vector;

const FIELDS: [Field; 3] = [Field::Prime(2), Field::Prime(5), Field::Rational];

#[test]
fn surjection_words_round_trip() {
    assert_eq!(word_to_surjection(&[0], 1), vec![0, 0]);
    assert_eq!(word_to_surjection(&[1, 0], 2), vec![0, 0, 0]);
    assert_eq!(word_to_surjection(&[1], 2), vec![0, 1, 1]);
    for w in [vec![], vec![0], vec![2, 0], vec![3, 1, 0]] {
        assert_eq!(surjection_to_word(&word_to_surjection(&w, 4)), w);
    }
}

#[test]
fn fixtures_are_valid() {
    let fx = fixtures();
    assert_eq!(fx.len(), 20);
    for (name, k) in &fx {
        let r = validate_sset(k);
        assert!(r.is_valid(), "{name}: {r}");
    }
}

#[test]
fn planted_face_violation() {
    let mut k = standard_simplex(2);
    let e02 = k.index_of("02").unwrap();
    let e01 = k.index_of("01").unwrap();
    let x = k.index_of("012").unwrap();
    k.faces[x][1] = DegenerateForm { base: e01, word: vec![] };
    assert_ne!(k.faces[x][1].base, e02);
    let r = validate_sset(&k);
    assert!(!r.is_valid());
    assert!(r.has("simplicial identity"));
}

#[test]
fn sphere_model() {
    let s2 = sphere(2);
    assert_eq!(s2.len(), 2);
    let x = s2.index_of("012").unwrap();
    for f in &s2.faces[x] {
        assert_eq!(f, &DegenerateForm { base: 0, word: vec![0] });
    }
    assert!(validate_sset(&s2).is_valid());
    for f in FIELDS {
        let c = twisted_chains(f, &s2);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis[0].degree, -2);
        assert!(c.differential[0].is_zero() && c.coproduct[0].is_zero() && c.curvature.is_zero());
        let n = normalized_chains(f, &s2);
        assert!(n.differential[x].is_zero());
        assert_eq!(n.coproduct[x].len(), 2);
    }
}

#[test]
fn normalized_chains_of_fixtures() {
    for (name, k) in fixtures() {
        for f in FIELDS {
            let c = normalized_chains(f, &k);
            let r = validate_normalized_chains(&c);
            assert!(r.is_valid(), "{name}: {r}");
        }
    }
    let f = Field::Rational;
    let d1 = standard_simplex(1);
    let c = normalized_chains(f, &d1);
    let (v0, v1, e) = (d1.index_of("0").unwrap(), d1.index_of("1").unwrap(), d1.index_of("01").unwrap());
    let mut expected = Vector::basis(v1, f.one());
    expected.add_term(v0, -f.one());
    assert_eq!(c.differential[e], expected);
    let d0 = normalized_chains(f, &standard_simplex(0));
    assert_eq!(d0.coproduct[0], Vector::basis((0, 0), f.one()));
}

#[test]
fn cochains_are_curved_algebras() {
    for (name, k) in fixtures() {
        for f in FIELDS {
            let plain = cochain_algebra(f, &k);
            let r = validate_curved_algebra(&plain);
            let has_edges = !k.of_dim(1).is_empty();
            assert_eq!(r.is_valid(), !has_edges || k.of_dim(1).iter().all(|&x| k.first_vertex(x) == k.last_vertex(x)), "{name}: {r}");
            let tw = twisted_cochain_algebra(f, &k);
            let r = validate_curved_algebra(&tw);
            assert!(r.is_valid(), "{name} twisted: {r}");
        }
    }
}

#[test]
fn untwisting_is_an_isomorphism() {
    for (name, k) in fixtures() {
        for f in FIELDS {
            let plain = cochain_algebra(f, &k);
            let tw = twisted_cochain_algebra(f, &k);
            let (down, up) = untwisting_pair(f, &k);
            let r = validate_algebra_morphism(&tw, &plain, &down);
            assert!(r.is_valid(), "{name} (id,-e): {r}");
            let r = validate_algebra_morphism(&plain, &tw, &up);
            assert!(r.is_valid(), "{name} (id,e): {r}");
            assert_eq!(compose_algebra_morphisms(&down, &up), AlgebraMorphism::identity(&plain));
            assert_eq!(compose_algebra_morphisms(&up, &down), AlgebraMorphism::identity(&tw));
        }
    }
}

#[test]
fn subset_formula_on_simplices() {
    for f in FIELDS {
        for n in 0..=5 {
            let k = standard_simplex(n);
            let c = twisted_chains(f, &k);
            assert!(c.curvature.is_zero());
            assert!(validate_pointed_curved_coalgebra(&c).is_valid());
            for (i, b) in c.basis.iter().enumerate() {
                let x = k.index_of(&b.label).unwrap();
                let dim = k.simplices[x].dim;
                let mut expected = Vector::zero();
                for j in 1..dim {
                    let face = k.face(&k.elem(x), j);
                    expected.add_term(c.index_of(&k.simplices[face.base].label).unwrap(), f.sign(j as i64));
                }
                assert_eq!(c.differential[i], expected, "Δ^{n} at {}", b.label);
            }
        }
    }
}

#[test]
fn degenerate_long_edge_has_curvature() {
    let k = quotient_by_labels(&standard_simplex(2), &["02"]).unwrap();
    for f in FIELDS {
        let c = twisted_chains(f, &k);
        let s = c.index_of("012").unwrap();
        assert_eq!(c.curvature, Vector::basis(s, -f.one()));
        assert!(validate_pointed_curved_coalgebra(&c).is_valid());
    }
}

#[test]
fn twisted_chains_of_fixtures_validate() {
    for (name, k) in fixtures() {
        for f in FIELDS {
            let r = validate_pointed_curved_coalgebra(&twisted_chains(f, &k));
            assert!(r.is_valid(), "{name}: {r}");
        }
    }
}

fn check_chain_map(f: Field, k: &FiniteSimplicialSet, l: &FiniteSimplicialSet, m: &SimplicialMap) -> CoalgebraMorphism {
    let cm = chains_on_map(f, k, l, m).unwrap();
    let r = validate_coalgebra_morphism(&twisted_chains(f, k), &twisted_chains(f, l), &cm);
    assert!(r.is_valid(), "{r}");
    cm
}

#[test]
fn chains_on_basic_maps() {
    let f = Field::Prime(5);
    let d1 = standard_simplex(1);
    let id = check_chain_map(f, &d1, &d1, &identity_map(&d1));
    assert_eq!(id, CoalgebraMorphism::identity(&twisted_chains(f, &d1)));
    let collapse = simplex_map(1, 0, &[0, 0]).unwrap();
    let m = check_chain_map(f, &d1, &standard_simplex(0), &collapse);
    assert_eq!(m.functional, Vector::basis(0, f.one()));
    for v in 0..2 {
        let inc = simplex_map(0, 1, &[v]).unwrap();
        let m = check_chain_map(f, &standard_simplex(0), &d1, &inc);
        assert!(m.functional.is_zero());
        assert_eq!(m.object_map, vec![v]);
    }
    let bad = SimplicialMap { images: vec![Elem { base: 0, surj: vec![0] }, Elem { base: 0, surj: vec![0] }, d1.elem(2)] };
    assert!(chains_on_map(f, &d1, &d1, &bad).is_err());
}

fn monotone_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..=m {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                let lo = p.last().copied().unwrap_or(0);
                (lo..=n).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

#[test]
fn chains_on_map_is_functorial() {
    let f = Field::Rational;
    for (m, n, p) in [(1, 2, 1), (2, 2, 2), (2, 1, 3), (3, 2, 2)] {
        let (km, kn, kp) = (standard_simplex(m), standard_simplex(n), standard_simplex(p));
        for a in monotone_maps(m, n) {
            for b in monotone_maps(n, p) {
                let fa = simplex_map(m, n, &a).unwrap();
                let fb = simplex_map(n, p, &b).unwrap();
                let ab = compose_maps(&kp, &fb, &fa);
                let c1 = check_chain_map(f, &km, &kp, &ab);
                let c2 = compose_coalgebra_morphisms(f, &check_chain_map(f, &kn, &kp, &fb), &check_chain_map(f, &km, &kn, &fa));
                assert_eq!(c1, c2, "{a:?} then {b:?}");
            }
        }
    }
    let d3 = standard_simplex(3);
    for labels in [vec!["03"], vec!["012"], vec!["0", "3"]] {
        let q = quotient_by_labels(&d3, &labels).unwrap();
        let a: Vec<usize> = (0..d3.len())
            .filter(|&x| q.index_of(&d3.simplices[x].label).is_none())
            .collect();
        let pi = quotient_map(&d3, &q, &a);
        for alpha in monotone_maps(2, 3) {
            let inc = simplex_map(2, 3, &alpha).unwrap();
            let composite = compose_maps(&q, &pi, &inc);
            let d2 = standard_simplex(2);
            let c1 = check_chain_map(f, &d2, &q, &composite);
            let c2 = compose_coalgebra_morphisms(f, &check_chain_map(f, &d3, &q, &pi), &check_chain_map(f, &d2, &d3, &inc));
            assert_eq!(c1, c2);
        }
    }
}
