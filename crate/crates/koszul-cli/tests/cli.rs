use std::path::{Path, PathBuf};
use std::process::Command;

use koszul_cli::doc::{self, Document};
use koszul_core::barcobar::{bar, bar_twisting};
use koszul_core::dgcat::default_retract;
use koszul_core::modcomod::{representable, Comodule, Side};
use koszul_core::{fixtures, Field};

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn koszul(args: &[&str]) -> Run {
    koszul_env(args, &[])
}

fn koszul_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_koszul"));
    cmd.args(args).env_remove("KOSZUL_FIELD");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("the binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn scratch(name: &str, text: &str) -> String {
    let dir = std::env::temp_dir().join(format!("koszul-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path: PathBuf = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.display().to_string()
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

#[test]
fn cobar_of_zero_coalgebra_is_empty() {
    let r = koszul(&["cobar", "--word-bound", "3", &fixture("zero-coalgebra.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = json(&r.stdout);
    assert_eq!(v["kind"], "dgcat");
    assert_eq!(v["body"]["objects"], serde_json::json!([]));
}

#[test]
fn counit_on_a2_stabilizes() {
    let r = koszul(&["counit-check", "--word-bound", "4", &fixture("a2.json")]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("stabilized: true"), "{}", r.stdout);
}

#[test]
fn fixtures_validate() {
    for name in ["a2.json", "bar-a2.json", "d1.json", "fgh.json", "k.json", "k_x.json", "s1.json", "s2.json", "sphere2.json"] {
        let r = koszul(&["validate", &fixture(name)]);
        assert_eq!(r.code, 0, "{name}: {}{}", r.stdout, r.stderr);
        assert!(r.stdout.contains("valid"), "{name}: {}", r.stdout);
    }
}

#[test]
fn planted_d_squared_failure_exits_one_with_witness() {
    let mut v = json(&std::fs::read_to_string(fixture("d1.json")).unwrap());
    let body = &mut v["body"];
    body["morphisms"].as_array_mut().unwrap().push(serde_json::json!({"degree": 2, "label": "c", "source": "1", "target": "2"}));
    body["differential"]["b"] = serde_json::json!({"c": "1"});
    let path = scratch("bad-d1.json", &v.to_string());
    let r = koszul(&["validate", "--format", "json", &path]);
    assert_eq!(r.code, 1);
    let report = json(&r.stdout);
    assert_eq!(report["ok"], false);
    assert_eq!(report["failures"][0]["law"], "d^2");
    assert_eq!(report["failures"][0]["witness"], "a");
}

#[test]
fn unusable_input_exits_two() {
    assert_eq!(koszul(&["validate", "/nonexistent/koszul.json"]).code, 2);
    assert_eq!(koszul(&["validate", &scratch("garbage.json", "{ not json")]).code, 2);
    let r = koszul(&["fixture", "no-such-thing"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("A2"), "{}", r.stderr);
    assert_eq!(koszul(&["frobnicate"]).code, 2);
    assert_eq!(koszul(&["cobar", &fixture("a2.json")]).code, 2);
    assert_eq!(koszul(&["--field", "F4", "fixture", "k"]).code, 2);
}

#[test]
fn bar_then_cobar_outputs_parse() {
    let r = koszul(&["bar", "--word-bound", "2", &fixture("a2.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(matches!(doc::parse(&r.stdout, None).unwrap(), Document::Coalgebra(_)));
    let b = scratch("bar.json", &r.stdout);
    let r = koszul(&["cobar", "--word-bound", "2", &b]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(matches!(doc::parse(&r.stdout, None).unwrap(), Document::DgCat(_)));
    assert_eq!(koszul(&["validate", &scratch("cobar.json", &r.stdout)]).code, 0);
}

#[test]
fn field_from_environment() {
    let r = koszul_env(&["fixture", "k"], &[("KOSZUL_FIELD", "F7")]);
    assert_eq!(json(&r.stdout)["field"], "F7");
    let mut v = json(&std::fs::read_to_string(fixture("d1.json")).unwrap());
    v.as_object_mut().unwrap().remove("field");
    let path = scratch("fieldless.json", &v.to_string());
    let r = koszul_env(&["bar", &path], &[("KOSZUL_FIELD", "F3")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(json(&r.stdout)["field"], "F3");
}

#[test]
fn sphere_loop_homology() {
    let r = koszul(&["L", "--homology", "--format", "json", "--degree-window=-3:0", &fixture("sphere2.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let rows = json(&r.stdout)["rows"].as_array().unwrap().clone();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|row| row["dim"] == 1));
}

#[test]
fn nerve_and_adjunction_on_a2() {
    let a2 = scratch("a2-f5.json", &koszul(&["fixture", "A2", "--field", "F5"]).stdout);
    let r = koszul(&["nerve-check", "--level", "2", &a2]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert_eq!(koszul(&["nerve-check", &fixture("a2.json")]).code, 2);
    let bar_a2 = scratch("bar-a2-f5.json", &koszul(&["bar", &a2]).stdout);
    let r = koszul(&["adjunction-roundtrip", "--format", "json", &bar_a2, &a2]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert_eq!(json(&r.stdout)["ok"], true);
}

#[test]
fn twisting_a_simple_comodule_gives_a_representable() {
    let f = Field::Rational;
    let d = fixtures::a2(f);
    let b = bar(&d, 3).unwrap();
    let v = default_retract(&d).unwrap();
    let tau = bar_twisting(&d, &v, &b);
    let mc = scratch(
        "mc.json",
        &doc::serialize(&Document::Mc { coalgebra: b.coalgebra.clone(), category: d.clone(), mc: tau }),
    );
    let k = Comodule::simple(&b.coalgebra, Side::Right, 0, 0);
    let comod = scratch("simple.json", &doc::serialize(&Document::Comodule { coalgebra: b.coalgebra.clone(), comodule: k }));
    let r = koszul(&["twist", &mc, &comod]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let Document::Module { module, .. } = doc::parse(&r.stdout, None).unwrap() else { panic!("not a module") };
    let rep = representable(&d, 0);
    assert_eq!(module.labels.len(), rep.labels.len());
    let module_doc = scratch("module.json", &r.stdout);
    assert_eq!(koszul(&["validate", &module_doc]).code, 0);
    let r = koszul(&["fg-adjoint", &mc, &comod, &module_doc]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert_eq!(koszul(&["mc-check", &mc]).code, 0);
    let r = koszul(&["twist", &mc, &fixture("a2.json")]);
    assert_eq!(r.code, 2);
}
