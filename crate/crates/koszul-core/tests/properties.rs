use proptest::prelude::*;

use koszul_core::barcobar::cobar;
use koszul_core::coalgebra::validate_pointed_curved_coalgebra;
use koszul_core::curved::{all_vectors, mc_check, mc_check_uncurved, validate_curved_algebra};
use koszul_core::linalg::Echelon;
use koszul_core::simplicial::{
    subset_complex, twisted_chains, twisted_cochain_algebra, validate_sset, FiniteSimplicialSet,
};
use koszul_core::{Field, Scalar, Vector};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Prime(2)), Just(Field::Prime(3)), Just(Field::Prime(7))]
}

fn scalar(f: Field) -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..6).prop_map(move |(n, d)| {
        let d = f.int(d);
        if d.is_zero() { f.int(n) } else { f.int(n).try_div(&d).unwrap() }
    })
}

fn scalars(n: usize) -> impl Strategy<Value = (Field, Vec<Scalar>)> {
    field().prop_flat_map(move |f| (Just(f), proptest::collection::vec(scalar(f), n)))
}

fn vector(f: Field, len: usize) -> impl Strategy<Value = Vector<usize>> {
    proptest::collection::vec((0..len, scalar(f)), 0..len).prop_map(|terms| {
        let mut v = Vector::zero();
        for (k, c) in terms {
            v.add_term(k, c);
        }
        v
    })
}

/// Simplicial complexes on at most four vertices, given by facets.
fn complex() -> impl Strategy<Value = FiniteSimplicialSet> {
    proptest::collection::vec(proptest::collection::btree_set(0usize..4, 1..4), 1..4)
        .prop_map(|facets| subset_complex(&facets.into_iter().map(|s| s.into_iter().collect()).collect::<Vec<_>>()))
}

proptest! {
    #[test]
    fn field_laws((f, xs) in scalars(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        let add = |x: &Scalar, y: &Scalar| x.try_add(y).unwrap();
        let mul = |x: &Scalar, y: &Scalar| x.try_mul(y).unwrap();
        prop_assert_eq!(add(&add(a, b), c), add(a, &add(b, c)));
        prop_assert_eq!(mul(&mul(a, b), c), mul(a, &mul(b, c)));
        prop_assert_eq!(mul(a, &add(b, c)), add(&mul(a, b), &mul(a, c)));
        prop_assert_eq!(add(a, b), add(b, a));
        prop_assert_eq!(mul(a, b), mul(b, a));
        prop_assert!(add(a, &-a.clone()).is_zero());
        prop_assert_eq!(mul(a, &f.one()), a.clone());
        if !a.is_zero() {
            prop_assert!(mul(a, &a.inverse().unwrap()).is_one());
        }
        if let Some(p) = f.order() {
            prop_assert!(f.int(p as i64).is_zero());
        }
    }

    #[test]
    fn vector_space_laws((v, w, c) in field().prop_flat_map(|f| (vector(f, 6), vector(f, 6), scalar(f)))) {
        let mut s = v.clone();
        s.add(&w);
        prop_assert_eq!(s.sub(&w), v.clone());
        prop_assert!(v.sub(&v).is_zero());
        prop_assert!(v.iter().all(|(_, x)| !x.is_zero()));
        let mut lhs = v.clone();
        lhs.add(&w);
        let lhs = lhs.scaled(&c);
        let mut rhs = v.scaled(&c);
        rhs.add_scaled(&w, &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(f in field(), rows in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 0..6)) {
        let rows: Vec<Vector<usize>> = rows
            .iter()
            .map(|r| {
                let mut v = Vector::zero();
                for (j, &x) in r.iter().enumerate() {
                    v.add_term(j, f.int(x));
                }
                v
            })
            .collect();
        let e = Echelon::new(f, 5, rows.clone());
        let kernel = e.kernel(f);
        prop_assert_eq!(e.rank() + kernel.len(), 5);
        for k in &kernel {
            for r in &rows {
                let mut dot = f.zero();
                for (j, x) in r.iter() {
                    if let Some(y) = k.get(j) {
                        dot = dot.try_add(&x.try_mul(y).unwrap()).unwrap();
                    }
                }
                prop_assert!(dot.is_zero());
            }
        }
        for r in &rows {
            prop_assert!(e.reduce(r).is_zero());
        }
    }

    #[test]
    fn twisted_chains_of_complexes_are_coalgebras(f in field(), k in complex()) {
        prop_assert!(validate_sset(&k).is_valid());
        let c = twisted_chains(f, &k);
        let report = validate_pointed_curved_coalgebra(&c);
        prop_assert!(report.is_valid(), "{:?}", report);
    }

    #[test]
    fn cobar_squares_to_zero(f in field(), k in complex()) {
        let c = twisted_chains(f, &k);
        let om = cobar(&c, 3);
        for (x, m) in om.basis().iter().enumerate() {
            if om.exact_degree(m.source, m.target, m.degree + 1) {
                prop_assert!(om.d(om.differential(x)).is_zero(), "d² ≠ 0 on {}", m.label);
            }
        }
    }

    #[test]
    fn mc_tests_agree(k in complex()) {
        let f = Field::Prime(2);
        let a = twisted_cochain_algebra(f, &k);
        prop_assert!(validate_curved_algebra(&a).is_valid());
        let a1 = a.basis_in_degree(1);
        prop_assume!(a1.len() <= 8);
        for x in all_vectors(f, &a1, 1 << 10).unwrap() {
            prop_assert_eq!(mc_check(&a, &x), mc_check_uncurved(&a, &x));
        }
    }
}
