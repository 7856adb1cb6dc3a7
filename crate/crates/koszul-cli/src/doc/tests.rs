use koszul_core::barcobar::{bar, bar_twisting, cobar};
use koszul_core::coalgebra::{CoalgebraMorphism, PointedCurvedCoalgebra};
use koszul_core::dgcat::default_retract;
use koszul_core::modcomod::{representable, twist_comodule, Comodule, Side};
use koszul_core::simplicial::{fixtures as sset_fixtures, twisted_chains};
use koszul_core::{fixtures, Field};

use super::*;

fn round_trip(doc: &Document) {
    let text = serialize(doc);
    let back = parse(&text, None).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(serialize(&back), text);
}

fn exact_round_trip(doc: &Document) {
    round_trip(doc);
    assert_eq!(&parse(&serialize(doc), None).unwrap(), doc);
}

#[test]
fn fixtures_round_trip() {
    for f in [Field::Prime(2), Field::Prime(5), Field::Rational] {
        for d in [fixtures::k(f), fixtures::a2(f), fixtures::s_n(f, 1), fixtures::d_n(f, 1), fixtures::fgh(f), fixtures::k_x(f)] {
            exact_round_trip(&Document::DgCat(d.clone()));
            let b = bar(&d, 2).unwrap();
            exact_round_trip(&Document::Coalgebra(b.coalgebra.clone()));
            let v = default_retract(&d).unwrap();
            let tau = bar_twisting(&d, &v, &b);
            exact_round_trip(&Document::Mc { coalgebra: b.coalgebra.clone(), category: d.clone(), mc: tau.clone() });
            let g = twist_comodule(&b.coalgebra, &d, &tau, &representable(&d, 0)).unwrap();
            exact_round_trip(&Document::Comodule { coalgebra: b.coalgebra.clone(), comodule: g });
            exact_round_trip(&Document::Module { category: d.clone(), module: representable(&d, 0) });
            let id = CoalgebraMorphism::identity(&b.coalgebra);
            exact_round_trip(&Document::Morphism { source: b.coalgebra.clone(), target: b.coalgebra.clone(), morphism: id });
            round_trip(&Document::DgCat(cobar(&b.coalgebra, 2)));
            let left = Comodule::regular(&b.coalgebra, Side::Left);
            exact_round_trip(&Document::Comodule { coalgebra: b.coalgebra, comodule: left });
        }
    }
    for (_, k) in sset_fixtures() {
        exact_round_trip(&Document::SSet(k.clone()));
        exact_round_trip(&Document::Coalgebra(twisted_chains(Field::Prime(3), &k)));
    }
    exact_round_trip(&Document::Coalgebra(PointedCurvedCoalgebra::coradical(Field::Rational, vec![])));
}

#[test]
fn truncation_survives() {
    let f = Field::Rational;
    let om = cobar(&bar(&fixtures::a2(f), 2).unwrap().coalgebra, 3);
    let back = match parse(&serialize(&Document::DgCat(om.clone())), None).unwrap() {
        Document::DgCat(d) => d,
        other => panic!("{other:?}"),
    };
    assert_eq!(back.truncation(), om.truncation());
    assert!(koszul_core::dgcat::validate_dg_category(&back).is_valid());
}

#[test]
fn unsorted_word_is_rejected() {
    let k = koszul_core::simplicial::sphere(2);
    let mut v = to_value(&Document::SSet(k));
    v["body"]["simplices"][1]["faces"][0]["word"] = serde_json::json!([0, 1]);
    let e = parse_value(&v, None).unwrap_err();
    assert_eq!(e.pointer, "/body/simplices/1/faces/0/word");
}

#[test]
fn errors_carry_pointers() {
    let mut v = to_value(&Document::DgCat(fixtures::a2(Field::Prime(5))));
    v["body"]["morphisms"][3]["degree"] = serde_json::json!("zero");
    assert_eq!(parse_value(&v, None).unwrap_err().pointer, "/body/morphisms/3/degree");
    let mut v = to_value(&Document::DgCat(fixtures::a2(Field::Prime(5))));
    v["body"]["differential"] = serde_json::json!({"nope": {}});
    assert_eq!(parse_value(&v, None).unwrap_err().pointer, "/body/differential/nope");
    let mut v = to_value(&Document::DgCat(fixtures::a2(Field::Prime(5))));
    v["schema"] = serde_json::json!(2);
    assert_eq!(parse_value(&v, None).unwrap_err().pointer, "/schema");
    let mut v = to_value(&Document::DgCat(fixtures::k(Field::Prime(5))));
    v.as_object_mut().unwrap().remove("field");
    assert!(parse_value(&v, None).is_err());
    assert_eq!(parse_value(&v, Some(Field::Prime(5))).unwrap(), Document::DgCat(fixtures::k(Field::Prime(5))));
}

#[test]
fn scalars_are_canonical() {
    let text = serialize(&Document::DgCat(fixtures::d_n(Field::Prime(5), 1)));
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["body"]["differential"]["a"]["b"], "1");
    let mut raw = v.clone();
    raw["body"]["differential"]["a"]["b"] = serde_json::json!("6");
    let d = parse_value(&raw, None).unwrap();
    assert_eq!(serialize(&d), text);
}
