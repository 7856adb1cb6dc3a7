use super::*;
use crate::coalgebra::{dualize, validate_pointed_curved_coalgebra};
use crate::curved::validate_curved_algebra;
use crate::dgcat::{default_retract, Retract};
use crate::fixtures;
use crate::scalar::Field;
use crate::vector::Vector;

const FIELDS: [Field; 3] = [Field::Prime(2), Field::Prime(5), Field::Rational];

#[test]
fn bar_of_k() {
    let f = Field::Rational;
    let d = fixtures::k(f);
    let nr = bar_nonreduced(&d, 2);
    assert_eq!(nr.coalgebra.dim(), 2);
    let sid = nr.word_index(&[0]).unwrap();
    let sid2 = nr.word_index(&[0, 0]).unwrap();
    assert_eq!(nr.coalgebra.differential[sid2], Vector::basis(sid, -f.one()));
    assert_eq!(bar(&d, 3).unwrap().coalgebra.dim(), 0);
}

#[test]
fn bar_of_a2() {
    for f in FIELDS {
        let b = bar(&fixtures::a2(f), 3).unwrap();
        let c = &b.coalgebra;
        assert_eq!(c.dim(), 4);
        let fg = c.index_of("[f|g]").unwrap();
        assert_eq!(c.basis[fg].degree, -2);
        assert_eq!(c.render(&c.differential[fg]), c.render(&Vector::basis(c.index_of("[gf]").unwrap(), -f.one())));
        assert!(c.curvature.is_zero());
        let r = validate_pointed_curved_coalgebra(c);
        assert!(r.is_valid(), "{r}");
    }
}

#[test]
fn bar_of_s_n() {
    for n in -2..=2 {
        let b = bar(&fixtures::s_n(Field::Prime(5), n), 4).unwrap();
        assert_eq!(b.coalgebra.dim(), 1);
        assert_eq!(b.coalgebra.basis[0].degree, n - 1);
        assert!(b.coalgebra.differential[0].is_zero());
    }
}

#[test]
fn fixture_bars_validate_and_cross_check() {
    for f in FIELDS {
        for d in [fixtures::k(f), fixtures::a2(f), fixtures::k_x(f), fixtures::d_n(f, 1), fixtures::fgh(f), fixtures::k_eps(f, 0), fixtures::k_eps(f, 1)] {
            for w in 1..=3 {
                let b = bar(&d, w).unwrap();
                let r = validate_pointed_curved_coalgebra(&b.coalgebra);
                assert!(r.is_valid(), "W={w}: {r}");
                let nr = bar_nonreduced(&d, w);
                let r = validate_curved_algebra(&dualize(&nr.coalgebra));
                assert!(r.is_valid() && nr.coalgebra.curvature.is_zero(), "nonreduced W={w}: {r}");
                let r = reduced_nonreduced_check(&d, w).unwrap();
                assert!(r.is_valid(), "cross-check W={w}: {r}");
            }
        }
    }
}

#[test]
fn curved_bar_of_k_x() {
    let f = Field::Rational;
    let b = bar(&fixtures::k_x(f), 2).unwrap();
    // [x] sits in degree −2; x has no differential and x² = 0, so h vanishes
    assert!(b.coalgebra.curvature.is_zero());
    let acyclic = crate::dgcat::CategoryBuilder::new(f)
        .object("*")
        .morphism("x", -1, "*", "*")
        .d("x", &[("id_*", 1)])
        .build()
        .unwrap();
    let b = bar(&acyclic, 2).unwrap();
    assert_eq!(b.coalgebra.curvature, Vector::basis(0, -f.one()));
    assert!(validate_pointed_curved_coalgebra(&b.coalgebra).is_valid());
}

#[test]
fn retract_change_on_k_eps() {
    let f = Field::Prime(5);
    let d = fixtures::k_eps(f, 0);
    let v = default_retract(&d).unwrap();
    let same = retract_independence(&d, &v, &v, 3).unwrap();
    assert!(same.report.is_valid());
    assert!(same.forward.b.is_zero());
    let id = d.identity(0).unwrap();
    let e = d.index_of("e").unwrap();
    let w = Retract { functionals: alloc::vec![[(id, f.one()), (e, f.one())].into_iter().collect()] };
    let iso = retract_independence(&d, &v, &w, 3).unwrap();
    assert!(iso.report.is_valid(), "{}", iso.report);
    assert!(!iso.forward.b.is_zero());
}


fn curved_example(f: Field) -> crate::coalgebra::PointedCurvedCoalgebra {
    use crate::dgcat::Morphism;
    let m = |l: &str, d| Morphism { label: l.into(), degree: d, source: 0, target: 0 };
    crate::coalgebra::PointedCurvedCoalgebra::new(
        f,
        alloc::vec!["*".into()],
        alloc::vec![m("x", -1), m("c", -2)],
        alloc::vec![Vector::zero(), Vector::basis((0, 0), f.one())],
        alloc::vec![Vector::zero(), Vector::zero()],
        Vector::basis(1, f.one()),
    )
    .unwrap()
}

#[test]
fn cobar_of_coradical_and_zero() {
    use crate::coalgebra::PointedCurvedCoalgebra;
    let f = Field::Rational;
    let om = cobar(&PointedCurvedCoalgebra::coradical(f, alloc::vec!["a".into(), "b".into()]), 3);
    assert_eq!(om.basis().len(), 2);
    assert!(crate::dgcat::validate_dg_category(&om).is_valid());
    let om = cobar(&PointedCurvedCoalgebra::coradical(f, alloc::vec![]), 3);
    assert!(om.objects().is_empty() && om.basis().is_empty());
}

#[test]
fn cobar_bar_of_s_n_is_s_n() {
    for n in 0..=2 {
        let f = Field::Prime(2);
        let d = fixtures::s_n(f, n);
        let om = cobar(&bar(&d, 4).unwrap().coalgebra, 4);
        let relabel = |l: &str| if l == "<[f]>" { "f".into() } else { alloc::string::String::from(l) };
        assert_eq!(crate::dgcat::same_presentation(&om, &d, relabel), Ok(()));
    }
}

#[test]
fn cobar_of_curved_example_squares_to_zero() {
    for f in FIELDS {
        let c = curved_example(f);
        let om = cobar(&c, 4);
        let r = crate::dgcat::validate_dg_category(&om);
        assert!(r.is_valid(), "{r}");
        // x_c has degree −1 and d x_c = id + x_x x_x up to sign
        let xc = om.index_of("<c>").unwrap();
        assert_eq!(om.differential(xc).len(), 2);
    }
}

#[test]
fn cobar_functoriality() {
    use crate::coalgebra::{dualize, dualize_inverse, CoalgebraMorphism};
    use crate::curved::{twist, AElem};
    for f in FIELDS {
        let c = curved_example(f);
        let id = CoalgebraMorphism::identity(&c);
        let om = cobar(&c, 3);
        let fid = cobar_on_morphism(&c, &c, &id, 3).unwrap();
        let gens = cobar_generators(&om, &c);
        for (i, g) in gens.iter().enumerate() {
            assert_eq!(fid.generator_images[i], Vector::basis(*g, f.one()));
        }
        // C → C' where C'* is the twist of C* by b = x*
        let b = Vector::basis(AElem::Gen(0), f.int(3));
        let c2 = dualize_inverse(&twist(&dualize(&c), &b)).unwrap();
        let mut m = CoalgebraMorphism::identity(&c);
        m.functional = Vector::basis(0, f.int(3));
        let fm = cobar_on_morphism(&c, &c2, &m, 3).unwrap();
        let om2 = cobar(&c2, 3);
        let x2 = om2.index_of("<x>").unwrap();
        let mut expect = Vector::basis(x2, f.one());
        expect.add_term(om2.identity(0).unwrap(), -f.int(3));
        assert_eq!(fm.generator_images[0], expect);
        // back again with −b, and the composite is the identity on generators
        let mut back = CoalgebraMorphism::identity(&c2);
        back.functional = Vector::basis(0, -f.int(3));
        let gm = cobar_on_morphism(&c2, &c, &back, 3).unwrap();
        let comp = compose_cobar_functors(&om2, &om, &gm, &fm);
        assert_eq!(comp, fid);
    }
}

fn triple_bijection(c: &crate::coalgebra::PointedCurvedCoalgebra, d: &crate::dgcat::DgCategory) -> usize {
    let budget = 1 << 20;
    let v = default_retract(d).unwrap();
    let conil = c.conilpotence_degree().unwrap().max(1);
    let b = bar_reduced(d, &v, conil).unwrap();
    let mc = mc_enumerate(c, d, budget).unwrap();
    let functors = cobar_hom_enumerate(c, d, budget).unwrap();
    let homs = bar_hom_enumerate(c, &b, budget).unwrap();
    assert_eq!(mc.len(), functors.len());
    assert_eq!(mc.len(), homs.len(), "Hom(C,BD) for {:?}", c.basis);
    for x in &mc {
        assert_eq!(&phi(&phi_inv(x)), x);
        let m = psi(c, d, &v, &b, x).unwrap();
        assert!(homs.contains(&m), "psi(ξ) not among the coalgebra maps");
        assert_eq!(&psi_inv(c, d, &v, &b, &m), x);
    }
    for m in &homs {
        let x = psi_inv(c, d, &v, &b, m);
        assert_eq!(&psi(c, d, &v, &b, &x).unwrap(), m);
    }
    for g in &functors {
        assert!(mc.contains(&phi(g)));
    }
    mc.len()
}

#[test]
fn adjunction_triple_bijection_small() {
    use crate::coalgebra::PointedCurvedCoalgebra;
    let f = Field::Prime(2);
    let ds = [fixtures::k(f), fixtures::s_n(f, 1), fixtures::a2(f), fixtures::k_eps(f, 0)];
    let cs = [
        PointedCurvedCoalgebra::coradical(f, alloc::vec!["p".into()]),
        PointedCurvedCoalgebra::coradical(f, alloc::vec!["p".into(), "q".into()]),
        curved_example(f),
        bar(&fixtures::s_n(f, 1), 2).unwrap().coalgebra,
        bar(&fixtures::k_eps(f, 0), 2).unwrap().coalgebra,
    ];
    let mut total = 0;
    for c in &cs {
        for d in &ds {
            total += triple_bijection(c, d);
        }
    }
    assert!(total > 10);
}

#[test]
fn mc_of_coradical_is_object_maps() {
    use crate::coalgebra::PointedCurvedCoalgebra;
    let f = Field::Prime(2);
    let c = PointedCurvedCoalgebra::coradical(f, alloc::vec!["p".into(), "q".into()]);
    assert_eq!(mc_enumerate(&c, &fixtures::a2(f), 100).unwrap().len(), 9);
}

#[test]
fn planted_curvature_breaks_mc() {
    let f = Field::Prime(2);
    let d = fixtures::k_eps(f, 0);
    let mut c = bar(&d, 2).unwrap().coalgebra;
    let mc = mc_enumerate(&c, &d, 1000).unwrap();
    let x = mc[0].clone();
    assert!(mc_check(&c, &d, &x));
    // [e|e] has degree −2; give it curvature
    let ee = c.index_of("[e|e]").unwrap();
    c.curvature = Vector::basis(ee, f.one());
    assert!(!mc_check(&c, &d, &x));
}

#[test]
fn enumeration_budget() {
    let f = Field::Prime(5);
    let d = fixtures::k_eps(f, 0);
    let c = bar(&d, 3).unwrap().coalgebra;
    assert!(matches!(mc_enumerate(&c, &d, 2), Err(crate::error::Error::EnumerationTooLarge { .. })));
}

#[test]
fn psi_needs_the_conilpotence_degree() {
    let f = Field::Prime(2);
    let d = fixtures::a2(f);
    let c = bar(&d, 2).unwrap().coalgebra;
    let v = default_retract(&d).unwrap();
    let b1 = bar_reduced(&d, &v, 1).unwrap();
    let x = MCElement { object_map: alloc::vec![0, 1, 2], xi: alloc::vec![Vector::zero(); c.dim()] };
    assert_eq!(psi(&c, &d, &v, &b1, &x), Err(crate::error::Error::TruncationTooSmall { needed: 2 }));
}

#[test]
fn pullback_preserves_mc() {
    let f = Field::Prime(2);
    let d = fixtures::a2(f);
    let v = default_retract(&d).unwrap();
    let b = bar_reduced(&d, &v, 2).unwrap();
    let tau = bar_twisting(&d, &v, &b);
    assert!(mc_check(&b.coalgebra, &d, &tau));
    let c = fixtures_bar_s1(f);
    for m in bar_hom_enumerate(&c, &b, 1 << 16).unwrap() {
        let x = mc_pullback(&c, &d, &m, &tau);
        assert!(mc_check(&c, &d, &x));
        assert_eq!(x, psi_inv(&c, &d, &v, &b, &m));
    }
}

fn fixtures_bar_s1(f: Field) -> crate::coalgebra::PointedCurvedCoalgebra {
    bar(&fixtures::s_n(f, 1), 2).unwrap().coalgebra
}

#[test]
fn counit_on_fixtures() {
    let f = Field::Prime(2);
    for d in [fixtures::k(f), fixtures::a2(f), fixtures::k_x(f), fixtures::d_n(f, 1), fixtures::s_n(f, 2)] {
        let r = counit_check(&d, 4, (-3, 0)).unwrap();
        assert!(r.is_valid(), "{:?}", r);
        assert!(r.stabilized);
    }
}

#[test]
fn counit_a2_pair_13() {
    let f = Field::Rational;
    let r = counit_check(&fixtures::a2(f), 4, (-3, 0)).unwrap();
    let row = r.rows.iter().find(|x| x.source == 0 && x.target == 2 && x.degree == 0).unwrap();
    assert_eq!((row.cobar_dim, row.target_dim), (1, 1));
}
