use std::collections::BTreeSet;

use rand_chacha::ChaCha8Rng;

use koszul_core::barcobar::{bar, bar_reduced, cobar, counit_check, object_maps, reduced_nonreduced_check};
use koszul_core::coalgebra::validate_pointed_curved_coalgebra;
use koszul_core::dgcat::{default_retract, same_presentation};
use koszul_core::nerve::{
    homology_table, l_functor, nerve_enumerate, nerve_enumerate_mc, nerve_structure_maps, ordinal_functors,
    OrdinalFunctor,
};
use koszul_core::simplicial::sphere;
use koszul_core::{fixtures, DgCategory, Field};

use super::BUDGET;
use crate::gen;

const F2: Field = Field::Prime(2);
const F5: Field = Field::Prime(5);
const Q: Field = Field::Rational;

pub fn bar_reduced_nonreduced(rng: &mut ChaCha8Rng) -> Result<String, String> {
    let mut cells = 0;
    for i in 0..100 {
        let f = [F2, F5, Q][i % 3];
        let d = gen::random_dgcat(rng, f);
        let v = default_retract(&d).map_err(|e| format!("instance {i}: {e}"))?;
        for w in 1..=3 {
            let b = bar_reduced(&d, &v, w).map_err(|e| format!("instance {i}: {e}"))?;
            let r = validate_pointed_curved_coalgebra(&b.coalgebra);
            if !r.is_valid() {
                return Err(format!("instance {i} over {f}, W={w}: {r}"));
            }
            cells += b.coalgebra.dim();
            let r = reduced_nonreduced_check(&d, w).map_err(|e| format!("instance {i}: {e}"))?;
            if !r.is_valid() {
                return Err(format!("instance {i} over {f}, W={w}: {r}"));
            }
        }
    }
    Ok(format!("100 categories at W = 1, 2, 3 ({cells} reduced bar cells)"))
}

pub fn cobar_bar_spheres(_: &mut ChaCha8Rng) -> Result<String, String> {
    let relabel = |l: &str| if l == "<[f]>" { "f".to_string() } else { l.to_string() };
    for f in [F2, F5, Q] {
        for n in 0..=2 {
            let d = fixtures::s_n(f, n);
            let b = bar(&d, 4).map_err(|e| e.to_string())?;
            same_presentation(&cobar(&b.coalgebra, 4), &d, relabel)
                .map_err(|e| format!("S({n}) over {f}: {e}"))?;
        }
    }
    Ok("S(0), S(1), S(2) over F2, F5 and Q".into())
}

pub fn counit(_: &mut ChaCha8Rng) -> Result<String, String> {
    let mut rows = 0;
    for f in [F2, Q] {
        let cats = [("k", fixtures::k(f)), ("A2", fixtures::a2(f)), ("k_x", fixtures::k_x(f)), ("D(1)", fixtures::d_n(f, 1))];
        for (name, d) in cats {
            let r = counit_check(&d, 4, (-3, 0)).map_err(|e| format!("{name}: {e}"))?;
            if !r.is_valid() || !r.stabilized {
                return Err(format!("{name} over {f}: valid {}, stabilized {}", r.is_valid(), r.stabilized));
            }
            rows += r.rows.len();
        }
    }
    Ok(format!("k, A2, k_x, D(1) over F2 and Q, {rows} homology groups compared"))
}

fn monotone(m: usize, n: usize) -> Vec<Vec<usize>> {
    object_maps(m + 1, n + 1).into_iter().filter(|a| a.windows(2).all(|w| w[0] <= w[1])).collect()
}

pub fn lurie_mc(_: &mut ChaCha8Rng) -> Result<String, String> {
    let cats = [("k", fixtures::k(F2)), ("S(1)", fixtures::s_n(F2, 1)), ("A2", fixtures::a2(F2)), ("fgh", fixtures::fgh(F2))];
    let (mut simplices, mut actions) = (0, 0);
    for (name, d) in &cats {
        let mut levels = Vec::new();
        for n in 0..=3 {
            let lurie = nerve_enumerate(d, n, BUDGET).map_err(|e| e.to_string())?;
            let mc = nerve_enumerate_mc(d, n, BUDGET).map_err(|e| e.to_string())?;
            if lurie != mc {
                return Err(format!("{name}, level {n}: {} Lurie simplices, {} MC simplices", lurie.len(), mc.len()));
            }
            simplices += lurie.len();
            levels.push(lurie.into_iter().collect::<BTreeSet<_>>());
        }
        for n in 0..=3 {
            for m in 0..=3 {
                for alpha in monotone(m, n) {
                    for x in &levels[n] {
                        let y = nerve_structure_maps(d, &alpha, x).map_err(|e| format!("{name} {alpha:?}: {e}"))?;
                        if !levels[m].contains(&y) {
                            return Err(format!("{name} {alpha:?}: image is not a simplex"));
                        }
                        actions += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{simplices} simplices in levels 0..3, {actions} structure maps agree"))
}

pub fn a2_nerve(_: &mut ChaCha8Rng) -> Result<String, String> {
    let d: DgCategory = fixtures::a2(F2);
    let mut counts = Vec::new();
    for n in 0..=3 {
        let nerve = nerve_enumerate(&d, n, BUDGET).map_err(|e| e.to_string())?;
        let functors = ordinal_functors(&d, n, BUDGET).map_err(|e| e.to_string())?;
        let edges: Vec<OrdinalFunctor> = nerve
            .iter()
            .map(|x| OrdinalFunctor {
                objects: x.objects.clone(),
                arrows: x.f.iter().filter(|(i, _)| i.len() == 2).map(|(i, v)| ((i[0], i[1]), v.clone())).collect(),
            })
            .collect();
        if edges != functors {
            return Err(format!("level {n}: {} simplices, {} functors", nerve.len(), functors.len()));
        }
        counts.push(nerve.len().to_string());
    }
    Ok(format!("levels 0..3 have {} simplices", counts.join(", ")))
}

pub fn l_sphere(_: &mut ChaCha8Rng) -> Result<String, String> {
    for f in [F2, F5, Q] {
        let l = l_functor(f, &sphere(2), 5);
        let rows = homology_table(&l, -3, 0).map_err(|e| e.to_string())?;
        let ok = rows.len() == 4 && rows.iter().all(|r| r.dim == 1 && r.exact);
        if !ok {
            let got: Vec<String> = rows.iter().map(|r| format!("{}:{}{}", r.degree, r.dim, if r.exact { "" } else { "?" })).collect();
            return Err(format!("over {f}: {}", got.join(" ")));
        }
    }
    Ok("H = k in degrees 0, -1, -2, -3 over F2, F5 and Q, all exact".into())
}
