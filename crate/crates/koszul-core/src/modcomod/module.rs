use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dgcat::DgCategory;
use crate::error::Report;
use crate::scalar::Field;
use crate::vector::Vector;

/// A dg functor `D → dgVect`, written as a right module in path order:
/// `v ∈ F(s)`, `a ∈ hom(s, t)` gives `v·a ∈ F(t)` and `(v·a)·b = v·μ(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Module {
    pub field: Field,
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    pub objects: Vec<usize>,
    pub differential: Vec<Vector<usize>>,
    /// `(v, a) ↦ v·a` on basis elements; missing entries are zero.
    pub action: BTreeMap<(usize, usize), Vector<usize>>,
}

impl Module {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn d(&self, v: &Vector<usize>) -> Vector<usize> {
        v.map_linear(|i| self.differential[*i].clone())
    }

    pub fn act(&self, v: &Vector<usize>, a: &Vector<usize>) -> Vector<usize> {
        let mut out = Vector::zero();
        for (i, x) in v {
            for (k, y) in a {
                if let Some(w) = self.action.get(&(*i, *k)) {
                    out.add_scaled(w, &(x * y));
                }
            }
        }
        out
    }

    /// Basis elements of `F(s)`.
    pub fn value(&self, s: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.objects[i] == s).collect()
    }
}

/// `Hom(X, −)`, with basis the morphisms out of `X`.
pub fn representable(d: &DgCategory, x: usize) -> Module {
    let idx: Vec<usize> = (0..d.objects().len()).flat_map(|t| d.hom(x, t).to_vec()).collect();
    let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut action = BTreeMap::new();
    for (p, &i) in idx.iter().enumerate() {
        let t = d.morphism(i).target;
        for u in 0..d.objects().len() {
            for &a in d.hom(t, u) {
                let w = d.mu_basis(i, a);
                if !w.is_zero() {
                    action.insert((p, a), w.map_keys(|k| pos[k]));
                }
            }
        }
    }
    Module {
        field: d.field,
        labels: idx.iter().map(|&i| d.morphism(i).label.clone()).collect(),
        degrees: idx.iter().map(|&i| d.morphism(i).degree).collect(),
        objects: idx.iter().map(|&i| d.morphism(i).target).collect(),
        differential: idx.iter().map(|&i| d.differential(i).map_keys(|k| pos[k])).collect(),
        action,
    }
}

/// `F[k]`: degrees lowered by `k`, differential signed by `(−1)^k`.
pub fn shift(m: &Module, k: i32) -> Module {
    let f = m.field;
    let s = f.sign(k as i64);
    Module {
        field: f,
        labels: m.labels.iter().map(|l| format!("{l}[{k}]")).collect(),
        degrees: m.degrees.iter().map(|d| d - k).collect(),
        objects: m.objects.clone(),
        differential: m.differential.iter().map(|v| v.scaled(&s)).collect(),
        action: m.action.clone(),
    }
}

/// `F ⊕ G`.
pub fn direct_sum(a: &Module, b: &Module) -> Module {
    let n = a.dim();
    let mut out = a.clone();
    out.labels.extend(b.labels.iter().map(|l| format!("{l}'")));
    out.degrees.extend(b.degrees.iter().copied());
    out.objects.extend(b.objects.iter().copied());
    out.differential.extend(b.differential.iter().map(|v| v.map_keys(|k| k + n)));
    for ((v, x), w) in &b.action {
        out.action.insert((v + n, *x), w.map_keys(|k| k + n));
    }
    out
}

/// Unit, associativity, Leibniz and `d² = 0`.
pub fn validate_module(d: &DgCategory, m: &Module) -> Report {
    let f = m.field;
    let mut r = Report::new();
    let n = m.dim();
    if m.degrees.len() != n || m.objects.len() != n || m.differential.len() != n {
        r.fail("module shape", "field lengths differ".into());
        return r;
    }
    for i in 0..n {
        if m.objects[i] >= d.objects().len() {
            r.fail("module shape", format!("{} has an unknown object", m.labels[i]));
            return r;
        }
        for j in m.differential[i].keys() {
            if *j >= n || m.objects[*j] != m.objects[i] || m.degrees[*j] != m.degrees[i] + 1 {
                r.fail("differential shape", format!("d({})", m.labels[i]));
            }
        }
    }
    for ((v, a), w) in &m.action {
        let mor = d.morphism(*a);
        if *v >= n || mor.source != m.objects[*v] {
            r.fail("action shape", format!("({}, {})", m.labels.get(*v).cloned().unwrap_or_default(), mor.label));
            continue;
        }
        for k in w.keys() {
            if *k >= n || m.objects[*k] != mor.target || m.degrees[*k] != m.degrees[*v] + mor.degree {
                r.fail("action shape", format!("{}·{}", m.labels[*v], mor.label));
            }
        }
    }
    if !r.is_valid() {
        return r;
    }
    for i in 0..n {
        let v = Vector::basis(i, f.one());
        let s = m.objects[i];
        if m.act(&v, &d.identity_vector(s)) != v {
            r.fail("unit", m.labels[i].clone());
        }
        if !m.d(&m.differential[i]).is_zero() {
            r.fail("d² = 0", m.labels[i].clone());
        }
        for t in 0..d.objects().len() {
            for &a in d.hom(s, t) {
                let av = Vector::basis(a, f.one());
                let va = m.act(&v, &av);
                let mut rhs = m.act(&m.differential[i], &av);
                rhs.add_scaled(&m.act(&v, d.differential(a)), &f.sign(m.degrees[i] as i64));
                if m.d(&va) != rhs {
                    r.fail("Leibniz", format!("{}·{}", m.labels[i], d.morphism(a).label));
                }
                for u in 0..d.objects().len() {
                    for &b in d.hom(t, u) {
                        let bv = Vector::basis(b, f.one());
                        if m.act(&va, &bv) != m.act(&v, &d.mu(&av, &bv)) {
                            r.fail(
                                "associativity",
                                format!("{}·{}·{}", m.labels[i], d.morphism(a).label, d.morphism(b).label),
                            );
                        }
                    }
                }
            }
        }
    }
    r
}

/// `Σ` over a per-basis map into a module: `v ↦ φ(v)` extended linearly.
pub fn apply_map(images: &[Vector<usize>], v: &Vector<usize>) -> Vector<usize> {
    v.map_linear(|i| images[*i].clone())
}

/// Zero module.
pub fn zero_module(field: Field) -> Module {
    Module {
        field,
        labels: Vec::new(),
        degrees: Vec::new(),
        objects: Vec::new(),
        differential: Vec::new(),
        action: BTreeMap::new(),
    }
}
