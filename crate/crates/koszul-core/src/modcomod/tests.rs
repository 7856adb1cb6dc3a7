use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::barcobar::{bar, bar_twisting, coalgebra_hom_enumerate, mc_check};
use crate::coalgebra::{validate_pointed_curved_coalgebra, PointedCurvedCoalgebra};
use crate::dgcat::default_retract;
use crate::fixtures;
use crate::scalar::Field;
use crate::vector::Vector;
use crate::coalgebra::CoalgebraMorphism;

const FIELDS: [Field; 3] = [Field::Prime(2), Field::Prime(5), Field::Rational];

fn bar_setup(d: &crate::dgcat::DgCategory, w: usize) -> (PointedCurvedCoalgebra, crate::barcobar::MCElement) {
    let v = default_retract(d).unwrap();
    let b = bar(d, w).unwrap();
    let tau = bar_twisting(d, &v, &b);
    assert!(mc_check(&b.coalgebra, d, &tau));
    (b.coalgebra, tau)
}

#[test]
fn representables_from_simple_comodules() {
    for f in FIELDS {
        let d = fixtures::a2(f);
        let (c, tau) = bar_setup(&d, 3);
        for x in 0..3 {
            let kx = Comodule::simple(&c, Side::Right, x, 0);
            assert!(validate_comodule(&c, &kx).is_valid());
            let m = twist_module(&c, &d, &tau, &kx).unwrap();
            assert!(validate_module(&d, &m).is_valid());
            let rep = representable(&d, x);
            assert_eq!(m.dim(), rep.dim());
            for t in 0..3 {
                assert_eq!(m.value(t).len(), d.hom(x, t).len());
            }
            assert_eq!(m.differential.iter().filter(|v| !v.is_zero()).count(), 0);
        }
    }
}

#[test]
fn twisted_comodules_validate() {
    for f in FIELDS {
        for d in [fixtures::a2(f), fixtures::fgh(f), fixtures::k_x(f), fixtures::d_n(f, 1)] {
            let (c, tau) = bar_setup(&d, 2);
            assert!(validate_pointed_curved_coalgebra(&c).is_valid());
            for x in 0..d.objects().len() {
                let rep = representable(&d, x);
                assert!(validate_module(&d, &rep).is_valid());
                let g = twist_comodule(&c, &d, &tau, &rep).unwrap();
                let r = validate_comodule(&c, &g);
                assert!(r.is_valid(), "{r}");
                let back = twist_module(&c, &d, &tau, &g).unwrap();
                let r = validate_module(&d, &back);
                assert!(r.is_valid(), "{r}");
            }
        }
    }
}

#[test]
fn fg_certificates_on_fixtures() {
    for f in FIELDS {
        for d in [fixtures::a2(f), fixtures::fgh(f), fixtures::k_x(f)] {
            let (c, tau) = bar_setup(&d, 2);
            for x in 0..d.objects().len() {
                for y in 0..d.objects().len() {
                    let n = Comodule::simple(&c, Side::Right, x, 0);
                    let m = representable(&d, y);
                    let cert = fg_adjunction_check(&c, &d, &tau, &n, &m).unwrap();
                    assert!(cert.is_valid(), "{cert:?}");
                    let g = twist_comodule(&c, &d, &tau, &representable(&d, x)).unwrap();
                    let cert = fg_adjunction_check(&c, &d, &tau, &g, &m).unwrap();
                    assert!(cert.is_valid(), "{cert:?}");
                }
            }
        }
    }
}

#[test]
fn fg_certificates_are_not_vacuous() {
    let f = Field::Prime(5);
    let d = fixtures::a2(f);
    let (c, tau) = bar_setup(&d, 2);
    let n = twist_comodule(&c, &d, &tau, &representable(&d, 0)).unwrap();
    let cert = fg_adjunction_check(&c, &d, &tau, &n, &representable(&d, 1)).unwrap();
    assert!(cert.is_valid());
    assert!(cert.rows.iter().map(|r| r.module_side).sum::<usize>() > 1);
}

#[test]
fn planted_square_failure() {
    let f = Field::Prime(5);
    let d = fixtures::fgh(f);
    let (c, tau) = bar_setup(&d, 2);
    let mut g = twist_comodule(&c, &d, &tau, &representable(&d, 0)).unwrap();
    assert!(validate_comodule(&c, &g).is_valid());
    let i = (0..g.dim()).find(|&i| !g.differential[i].is_zero()).unwrap();
    g.differential[i] = g.differential[i].scaled(&f.int(2));
    let r = validate_comodule(&c, &g);
    assert!(!r.is_valid());
}

#[test]
fn non_mc_twisting_is_rejected() {
    let f = Field::Prime(5);
    let d = fixtures::a2(f);
    let (c, tau) = bar_setup(&d, 2);
    let k = tau.xi.iter().position(|v| !v.is_zero()).unwrap();
    let mut bad = tau.clone();
    bad.xi[k] = bad.xi[k].scaled(&f.int(2));
    let n = Comodule::simple(&c, Side::Right, 0, 0);
    assert!(twist_module(&c, &d, &bad, &n).is_err());
    assert!(twist_comodule(&c, &d, &bad, &representable(&d, 0)).is_err());
}

#[test]
fn regular_comodules_and_cotensor() {
    for f in FIELDS {
        for d in [fixtures::a2(f), fixtures::fgh(f), fixtures::k_eps(f, 0)] {
            let (c, _) = bar_setup(&d, 2);
            let right = Comodule::regular(&c, Side::Right);
            let left = Comodule::regular(&c, Side::Left);
            assert!(validate_comodule(&c, &right).is_valid());
            assert!(validate_comodule(&c, &left).is_valid());
            for x in 0..c.objects.len() {
                let kx = Comodule::simple(&c, Side::Right, x, 1);
                let ct = cotensor(&c, &kx, &left).unwrap();
                // k_X □ C = k_X
                assert_eq!(ct.keys().copied().collect::<Vec<_>>(), vec![1]);
                assert_eq!(ct[&1].len(), 1);
                for y in 0..c.objects.len() {
                    let ky = Comodule::simple(&c, Side::Left, y, 0);
                    let ct = cotensor(&c, &kx, &ky).unwrap();
                    assert_eq!(ct.values().map(Vec::len).sum::<usize>(), usize::from(x == y));
                }
            }
            let ct = cotensor(&c, &right, &left).unwrap();
            assert_eq!(ct.values().map(Vec::len).sum::<usize>(), right.dim());
        }
    }
}

#[test]
fn curved_regular_comodule_fails() {
    let f = Field::Prime(5);
    let k = crate::simplicial::quotient_by_labels(&crate::simplicial::standard_simplex(2), &["02"]).unwrap();
    let c = crate::simplicial::twisted_chains(f, &k);
    assert!(c.is_curved());
    let r = validate_comodule(&c, &Comodule::regular(&c, Side::Right));
    assert!(r.has("d² = h∗m"));
    assert!(validate_comodule(&c, &Comodule::simple(&c, Side::Right, 0, 0)).is_valid());
}

#[test]
fn restriction_along_morphisms() {
    let f = Field::Prime(3);
    let d = fixtures::k_eps(f, 0);
    let (c, tau) = bar_setup(&d, 2);
    let comodules = [
        Comodule::regular(&c, Side::Right),
        twist_comodule(&c, &d, &tau, &representable(&d, 0)).unwrap(),
        Comodule::simple(&c, Side::Right, 0, 2),
    ];
    for m in &comodules {
        assert_eq!(restrict(&c, &CoalgebraMorphism::identity(&c), m).unwrap(), *m);
        let point = PointedCurvedCoalgebra::coradical(f, c.objects.clone());
        let collapse = CoalgebraMorphism { object_map: vec![0], linear: vec![Vector::zero(); c.dim()], functional: Vector::zero() };
        let r = validate_comodule(&point, &restrict(&c, &collapse, m).unwrap());
        assert!(r.is_valid(), "{r}");
    }
    // a loop with zero reduced coproduct admits any functional
    let s1 = crate::simplicial::twisted_chains(f, &crate::simplicial::sphere(1));
    let maps = coalgebra_hom_enumerate(&s1, &s1, 1 << 20).unwrap();
    assert!(maps.iter().any(|m| !m.functional.is_zero()));
    let comodules = [Comodule::regular(&s1, Side::Right), Comodule::simple(&s1, Side::Right, 0, 0)];
    for mor in &maps {
        for m in &comodules {
            let r = validate_comodule(&s1, &restrict(&s1, mor, m).unwrap());
            assert!(r.is_valid(), "{mor:?}: {r}");
        }
    }
}

#[test]
fn restriction_along_untwisting() {
    use crate::coalgebra::{dualize_inverse, validate_coalgebra_morphism};
    use crate::simplicial::{cochain_algebra, quotient_by_labels, standard_simplex, twisted_chains};
    let k = quotient_by_labels(&standard_simplex(2), &["0", "1", "2"]).unwrap();
    for f in [Field::Prime(5), Field::Rational] {
        let plain = dualize_inverse(&cochain_algebra(f, &k)).unwrap();
        let tw = twisted_chains(f, &k);
        let mut found = 0;
        for (src, tgt) in [(&plain, &tw), (&tw, &plain)] {
            for sign in [f.one(), -f.one()] {
                let functional: Vector<usize> =
                    (0..src.dim()).filter(|&i| src.basis[i].degree == -1).map(|i| (i, sign.clone())).collect();
                let mor = CoalgebraMorphism {
                    object_map: vec![0],
                    linear: (0..src.dim()).map(|i| Vector::basis(tgt.index_of(&src.basis[i].label).unwrap(), f.one())).collect(),
                    functional,
                };
                if !validate_coalgebra_morphism(src, tgt, &mor).is_valid() {
                    continue;
                }
                found += 1;
                for m in [Comodule::regular(src, Side::Right), Comodule::simple(src, Side::Right, 0, 1)] {
                    assert!(validate_comodule(src, &m).is_valid());
                    let r = validate_comodule(tgt, &restrict(src, &mor, &m).unwrap());
                    assert!(r.is_valid(), "{r}");
                }
            }
        }
        assert_eq!(found, 2);
    }
}

#[test]
fn twisted_module_of_representable_comodule_values() {
    let f = Field::Prime(2);
    let d = fixtures::a2(f);
    let (c, tau) = bar_setup(&d, 3);
    for x in 0..3 {
        let m = twist_module(&c, &d, &tau, &Comodule::simple(&c, Side::Right, x, 0)).unwrap();
        let rep = representable(&d, x);
        for t in 0..3 {
            let a: Vec<i32> = m.value(t).iter().map(|&i| m.degrees[i]).collect();
            let b: Vec<i32> = rep.value(t).iter().map(|&i| rep.degrees[i]).collect();
            assert_eq!(a, b);
        }
    }
}
