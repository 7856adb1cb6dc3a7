use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;

use koszul_core::barcobar::{bar, bar_twisting};
use koszul_core::dgcat::default_retract;
use koszul_core::modcomod::{fg_adjunction_check, representable, twist_module, Comodule, Module, Side};
use koszul_core::{fixtures, Field};

use crate::gen;

const F5: Field = Field::Prime(5);

/// Equality after renaming the elements of `m` by `rename`, ignoring basis order.
fn same_module(m: &Module, n: &Module, rename: impl Fn(&str) -> String) -> Result<(), String> {
    if m.dim() != n.dim() {
        return Err(format!("dimensions {} and {}", m.dim(), n.dim()));
    }
    let target: BTreeMap<&str, usize> = n.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
    let mut to = Vec::with_capacity(m.dim());
    for l in &m.labels {
        to.push(*target.get(rename(l).as_str()).ok_or_else(|| format!("{l} has no counterpart"))?);
    }
    for (i, &j) in to.iter().enumerate() {
        if m.degrees[i] != n.degrees[j] || m.objects[i] != n.objects[j] {
            return Err(format!("{} sits in a different degree or object", m.labels[i]));
        }
        if m.differential[i].map_keys(|k| to[*k]) != n.differential[j] {
            return Err(format!("differentials differ on {}", m.labels[i]));
        }
    }
    let moved: BTreeMap<(usize, usize), _> =
        m.action.iter().filter(|(_, w)| !w.is_zero()).map(|(&(v, a), w)| ((to[v], a), w.map_keys(|k| to[*k]))).collect();
    let theirs: BTreeMap<(usize, usize), _> = n.action.iter().filter(|(_, w)| !w.is_zero()).map(|(k, w)| (*k, w.clone())).collect();
    if moved != theirs {
        return Err("actions differ".into());
    }
    Ok(())
}

pub fn fg_certificates(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut maps = 0;
    for i in 0..100 {
        let d = gen::random_dgcat(rng, F5);
        let b = bar(&d, 2).map_err(|e| format!("instance {i}: {e}"))?;
        let v = default_retract(&d).map_err(|e| format!("instance {i}: {e}"))?;
        let tau = bar_twisting(&d, &v, &b);
        let n = gen::random_comodule(rng, &b.coalgebra, 3);
        let m = gen::random_module(rng, &d, 3);
        let cert = fg_adjunction_check(&b.coalgebra, &d, &tau, &n, &m).map_err(|e| format!("instance {i}: {e}"))?;
        if !cert.is_valid() {
            return Err(format!("instance {i}: {}", cert.report));
        }
        maps += cert.rows.iter().map(|r| r.module_side).sum::<usize>();
    }
    let d = fixtures::a2(F5);
    let b = bar(&d, 3).map_err(|e| e.to_string())?;
    let v = default_retract(&d).map_err(|e| e.to_string())?;
    let tau = bar_twisting(&d, &v, &b);
    for x in 0..d.objects().len() {
        let k = Comodule::simple(&b.coalgebra, Side::Right, x, 0);
        let free = twist_module(&b.coalgebra, &d, &tau, &k).map_err(|e| e.to_string())?;
        let prefix = format!("{}⊗", k.labels[0]);
        same_module(&free, &representable(&d, x), |l| l.strip_prefix(&prefix).unwrap_or(l).to_string())
            .map_err(|e| format!("A2, object {}: {e}", d.objects()[x]))?;
    }
    Ok(format!("100 instances over F5 ({maps} maps matched), A2 representables recovered"))
}
