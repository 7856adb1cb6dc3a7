//! Finite dg categories presented on a basis of morphisms.
//!
//! Composition is stored in path order: `mu(x, y)` for `x: s → t`, `y: t → u`
//! is the composite `s → u`. The usual `y ∘ x` equals `(−1)^{|x||y|} mu(x, y)`,
//! see [`DgCategory::compose`].

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Report};
use crate::linalg::{FiniteComplex, GradedSpace};
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

/// A basis morphism `source → target` of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub degree: i32,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Composition {
    Table(BTreeMap<(usize, usize), Vector<usize>>),
    Words {
        words: Vec<Vec<usize>>,
        index: BTreeMap<(usize, Vec<usize>), usize>,
    },
}

/// Word-length truncation data of a free category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub bound: usize,
    /// `(source, target, degree)` of each generator.
    pub generators: Vec<(usize, usize, i32)>,
    objects: usize,
    next_layer: BTreeMap<(usize, usize), BTreeSet<i32>>,
}

impl Truncation {
    /// Truncation data for a free category on the given generators, without building it.
    pub fn for_generators(bound: usize, generators: Vec<(usize, usize, i32)>, objects: usize) -> Truncation {
        Truncation::new(bound, generators, objects)
    }

    fn new(bound: usize, generators: Vec<(usize, usize, i32)>, objects: usize) -> Truncation {
        let mut t = Truncation {
            bound,
            generators,
            objects,
            next_layer: BTreeMap::new(),
        };
        let layers = t.layers(bound + 1);
        t.next_layer = layers.into_iter().last().unwrap_or_default();
        t
    }

    /// Degrees of words of each length `1..=max`, per `(source, target)`.
    fn layers(&self, max: usize) -> Vec<BTreeMap<(usize, usize), BTreeSet<i32>>> {
        let mut out: Vec<BTreeMap<(usize, usize), BTreeSet<i32>>> = Vec::new();
        let mut cur: BTreeMap<(usize, usize), BTreeSet<i32>> = BTreeMap::new();
        for &(s, t, d) in &self.generators {
            cur.entry((s, t)).or_default().insert(d);
        }
        for _ in 0..max {
            out.push(cur.clone());
            let mut next: BTreeMap<(usize, usize), BTreeSet<i32>> = BTreeMap::new();
            for (&(s, t), degs) in &cur {
                for &(gs, gt, gd) in &self.generators {
                    if gs == t {
                        let e = next.entry((s, gt)).or_default();
                        for d in degs {
                            e.insert(d + gd);
                        }
                    }
                }
            }
            cur = next;
        }
        out
    }

    /// No composable word of length `bound + 1` from `s` to `t` has degree `n`.
    pub fn exact(&self, s: usize, t: usize, n: i32) -> bool {
        !self
            .next_layer
            .get(&(s, t))
            .is_some_and(|d| d.contains(&n))
    }

    fn has_nonnegative_cycle(&self) -> bool {
        // closed walks of length ≤ #objects with weight ≥ 0 detect a nonnegative simple cycle
        let n = self.objects;
        let neg_inf = i64::MIN / 4;
        let mut best = vec![vec![neg_inf; n]; n];
        for &(s, t, d) in &self.generators {
            best[s][t] = best[s][t].max(d as i64);
        }
        let step = best.clone();
        for _ in 0..n {
            for (v, row) in best.iter().enumerate() {
                if row[v] >= 0 {
                    return true;
                }
            }
            let mut next = vec![vec![neg_inf; n]; n];
            for a in 0..n {
                for b in 0..n {
                    if best[a][b] == neg_inf {
                        continue;
                    }
                    for c in 0..n {
                        if step[b][c] == neg_inf {
                            continue;
                        }
                        next[a][c] = next[a][c].max(best[a][b] + step[b][c]);
                    }
                }
            }
            best = next;
        }
        false
    }

    /// No word longer than the bound from `s` to `t` has degree `n`.
    ///
    /// Conservative: returns false whenever a cycle of nonnegative total degree exists.
    pub fn complete(&self, s: usize, t: usize, n: i32) -> bool {
        if self.generators.is_empty() {
            return true;
        }
        if self.has_nonnegative_cycle() {
            return false;
        }
        let k = self.objects as i64;
        let gmax = self.generators.iter().map(|g| g.2).max().unwrap_or(0).max(0) as i64;
        let lstar = (k * ((k - 1) * gmax - n as i64) + k - 1).max(0) as usize;
        if lstar <= self.bound {
            return true;
        }
        let layers = self.layers(lstar);
        layers
            .iter()
            .skip(self.bound)
            .all(|l| !l.get(&(s, t)).is_some_and(|d| d.contains(&n)))
    }
}

/// A finite dg category, or a word-length truncation of a free one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgCategory {
    pub field: Field,
    objects: Vec<String>,
    basis: Vec<Morphism>,
    identities: Vec<Option<usize>>,
    differential: Vec<Vector<usize>>,
    composition: Composition,
    label_index: BTreeMap<String, usize>,
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    truncation: Option<Truncation>,
}

/// Per-object degree-0 functionals `v_s` on `hom(s,s)` with `v_s(id_s) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retract {
    pub functionals: Vec<Vector<usize>>,
}

impl Retract {
    /// `v(x)` for a morphism written in the basis; zero off endomorphisms.
    pub fn eval(&self, d: &DgCategory, x: &Vector<usize>) -> Scalar {
        let mut acc = d.field.zero();
        for (i, c) in x {
            let m = &d.basis[*i];
            if m.source == m.target {
                if let Some(v) = self.functionals[m.source].get(i) {
                    acc = &acc + &(c * v);
                }
            }
        }
        acc
    }
}

/// Path of arrows used to write differentials of free categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub source: usize,
    pub arrows: Vec<usize>,
}

impl DgCategory {
    /// Builds a category from a composition table of non-identity pairs.
    ///
    /// Identity products are filled in structurally. Only index sanity is checked
    /// here; the category laws are checked by [`validate_dg_category`].
    pub fn from_table(
        field: Field,
        objects: Vec<String>,
        basis: Vec<Morphism>,
        identities: Vec<Option<usize>>,
        differential: Vec<Vector<usize>>,
        products: Vec<((usize, usize), Vector<usize>)>,
    ) -> Result<DgCategory, Error> {
        if identities.len() != objects.len() || differential.len() != basis.len() {
            return Err(Error::IllFormed("length mismatch".into()));
        }
        let mut seen = BTreeSet::new();
        for o in &objects {
            if !seen.insert(o.clone()) {
                return Err(Error::DuplicateLabel(o.clone()));
            }
        }
        for m in &basis {
            if m.source >= objects.len() || m.target >= objects.len() {
                return Err(Error::IllFormed(format!("{} has an unknown endpoint", m.label)));
            }
        }
        for (s, id) in identities.iter().enumerate() {
            if let Some(i) = id {
                let m = basis
                    .get(*i)
                    .ok_or_else(|| Error::IllFormed("identity index".into()))?;
                if m.source != s || m.target != s || m.degree != 0 {
                    return Err(Error::IllFormed(format!("{} is not an identity shape", m.label)));
                }
            }
        }
        let n = basis.len();
        let check_idx = |v: &Vector<usize>| v.keys().all(|k| *k < n);
        if !differential.iter().all(check_idx) || !products.iter().all(|(_, v)| check_idx(v)) {
            return Err(Error::IllFormed("index out of range".into()));
        }
        let one = field.one();
        let mut table: BTreeMap<(usize, usize), Vector<usize>> = BTreeMap::new();
        for ((a, b), v) in products {
            if a >= n || b >= n {
                return Err(Error::IllFormed("product index".into()));
            }
            if !v.is_zero() {
                table.insert((a, b), v);
            }
        }
        for (s, id) in identities.iter().enumerate() {
            if let Some(i) = *id {
                for (x, m) in basis.iter().enumerate() {
                    if m.source == s {
                        table.insert((i, x), Vector::basis(x, one.clone()));
                    }
                    if m.target == s {
                        table.insert((x, i), Vector::basis(x, one.clone()));
                    }
                }
            }
        }
        DgCategory::assemble(
            field,
            objects,
            basis,
            identities,
            differential,
            Composition::Table(table),
            None,
        )
    }

    fn assemble(
        field: Field,
        objects: Vec<String>,
        basis: Vec<Morphism>,
        identities: Vec<Option<usize>>,
        differential: Vec<Vector<usize>>,
        composition: Composition,
        truncation: Option<Truncation>,
    ) -> Result<DgCategory, Error> {
        let mut label_index = BTreeMap::new();
        for (i, m) in basis.iter().enumerate() {
            if label_index.insert(m.label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(m.label.clone()));
            }
        }
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, m) in basis.iter().enumerate() {
            homs.entry((m.source, m.target)).or_default().push(i);
        }
        Ok(DgCategory {
            field,
            objects,
            basis,
            identities,
            differential,
            composition,
            label_index,
            homs,
            truncation,
        })
    }

    /// Attaches word-length truncation data, as read back from a document.
    pub fn with_truncation(mut self, t: Truncation) -> DgCategory {
        self.truncation = Some(t);
        self
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, label: &str) -> Result<usize, Error> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::UnknownObject(label.into()))
    }

    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }

    pub fn morphism(&self, i: usize) -> &Morphism {
        &self.basis[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn identity(&self, s: usize) -> Option<usize> {
        self.identities[s]
    }

    pub fn identity_vector(&self, s: usize) -> Vector<usize> {
        match self.identities[s] {
            Some(i) => Vector::basis(i, self.field.one()),
            None => Vector::zero(),
        }
    }

    pub fn is_identity(&self, i: usize) -> bool {
        self.identities[self.basis[i].source] == Some(i)
    }

    /// Basis indices of `hom(s, t)` in construction order.
    pub fn hom(&self, s: usize, t: usize) -> &[usize] {
        self.homs.get(&(s, t)).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn hom_in_degree(&self, s: usize, t: usize, n: i32) -> Vec<usize> {
        self.hom(s, t)
            .iter()
            .copied()
            .filter(|&i| self.basis[i].degree == n)
            .collect()
    }

    pub fn differential(&self, i: usize) -> &Vector<usize> {
        &self.differential[i]
    }

    pub fn d(&self, v: &Vector<usize>) -> Vector<usize> {
        v.map_linear(|i| self.differential[*i].clone())
    }

    pub fn truncation(&self) -> Option<&Truncation> {
        self.truncation.as_ref()
    }

    /// Word of generators for word-presented categories.
    pub fn word(&self, i: usize) -> Option<&[usize]> {
        match &self.composition {
            Composition::Words { words, .. } => Some(&words[i]),
            Composition::Table(_) => None,
        }
    }

    /// Path-order product of two basis morphisms.
    pub fn mu_basis(&self, x: usize, y: usize) -> Vector<usize> {
        if self.basis[x].target != self.basis[y].source {
            return Vector::zero();
        }
        match &self.composition {
            Composition::Table(t) => t.get(&(x, y)).cloned().unwrap_or_default(),
            Composition::Words { words, index } => {
                let mut w = words[x].clone();
                w.extend_from_slice(&words[y]);
                match index.get(&(self.basis[x].source, w)) {
                    Some(&k) => Vector::basis(k, self.field.one()),
                    None => Vector::zero(),
                }
            }
        }
    }

    /// Path-order product extended bilinearly.
    pub fn mu(&self, x: &Vector<usize>, y: &Vector<usize>) -> Vector<usize> {
        let mut r = Vector::zero();
        for (a, ca) in x {
            for (b, cb) in y {
                r.add_scaled(&self.mu_basis(*a, *b), &(ca * cb));
            }
        }
        r
    }

    /// Standard composite `f ∘ g` for `g: s → t`, `f: t → u`.
    pub fn compose(&self, f: usize, g: usize) -> Vector<usize> {
        let sign = self
            .field
            .sign(self.basis[f].degree as i64 * self.basis[g].degree as i64);
        self.mu_basis(g, f).scaled(&sign)
    }

    /// Degree of a homogeneous vector (None for zero or mixed).
    pub fn degree_of(&self, v: &Vector<usize>) -> Option<i32> {
        let mut it = v.keys().map(|i| self.basis[*i].degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn label_vector(&self, v: &Vector<usize>) -> String {
        render(v, |i| self.basis[*i].label.clone())
    }

    /// Hom complex `hom(s, t)`, restricted to degrees `[lo, hi]` when given.
    ///
    /// In a window the differential out of the top degree is dropped.
    pub fn hom_complex(
        &self,
        s: usize,
        t: usize,
        window: Option<(i32, i32)>,
    ) -> Result<FiniteComplex, Error> {
        if s >= self.objects.len() || t >= self.objects.len() {
            return Err(Error::UnknownObject(format!("{s},{t}")));
        }
        let keep = |d: i32| window.map_or(true, |(lo, hi)| lo <= d && d <= hi);
        let idx: Vec<usize> = self
            .hom(s, t)
            .iter()
            .copied()
            .filter(|&i| keep(self.basis[i].degree))
            .collect();
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
        let space = GradedSpace::new(
            idx.iter()
                .map(|&i| (self.basis[i].label.clone(), self.basis[i].degree))
                .collect(),
        )?;
        let cols = idx
            .iter()
            .map(|&i| {
                let top = window.is_some_and(|(_, hi)| self.basis[i].degree == hi);
                if top {
                    Vector::zero()
                } else {
                    self.differential[i].map_keys(|k| pos[k])
                }
            })
            .collect();
        FiniteComplex::from_columns(self.field, space, cols)
    }

    /// Labeled hom complex by object labels.
    pub fn hom_complex_by_label(&self, s: &str, t: &str) -> Result<FiniteComplex, Error> {
        let s = self.object_index(s)?;
        let t = self.object_index(t)?;
        self.hom_complex(s, t, None)
    }

    /// Exactness of the truncation at `(s, t, n)`; always true for untruncated categories.
    pub fn exact_degree(&self, s: usize, t: usize, n: i32) -> bool {
        self.truncation.as_ref().map_or(true, |tr| tr.exact(s, t, n))
    }

    /// Completeness of the truncation at `(s, t, n)`; always true for untruncated categories.
    pub fn complete_degree(&self, s: usize, t: usize, n: i32) -> bool {
        self.truncation.as_ref().map_or(true, |tr| tr.complete(s, t, n))
    }
}

pub(crate) fn render<K: Ord + Clone, F: Fn(&K) -> String>(v: &Vector<K>, name: F) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let mut parts: Vec<String> = v
        .iter()
        .map(|(k, c)| {
            if c.is_one() {
                name(k)
            } else {
                format!("{}·{}", c, name(k))
            }
        })
        .collect();
    parts.sort();
    parts.join(" + ")
}

/// Arrow of a free category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub degree: i32,
    pub source: usize,
    pub target: usize,
}

/// Free category on graded arrows with differentials given on arrows, truncated at
/// word length `bound` when supplied (required if the quiver has cycles).
pub fn free_category(
    field: Field,
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    differentials: Vec<Vec<(Path, Scalar)>>,
    bound: Option<usize>,
    separator: &str,
) -> Result<DgCategory, Error> {
    let n_obj = objects.len();
    if differentials.len() != arrows.len() {
        return Err(Error::IllFormed("one differential per arrow".into()));
    }
    for a in &arrows {
        if a.source >= n_obj || a.target >= n_obj {
            return Err(Error::IllFormed(format!("{} has an unknown endpoint", a.label)));
        }
    }
    for (a, dif) in arrows.iter().zip(&differentials) {
        for (p, _) in dif {
            let mut at = p.source;
            for &g in &p.arrows {
                let arrow = arrows
                    .get(g)
                    .ok_or_else(|| Error::IllFormedDifferential(a.label.clone()))?;
                if arrow.source != at {
                    return Err(Error::IllFormedDifferential(format!(
                        "non-composable term in d({})",
                        a.label
                    )));
                }
                at = arrow.target;
            }
            if p.source != a.source || at != a.target {
                return Err(Error::IllFormedDifferential(format!(
                    "term of d({}) in the wrong hom",
                    a.label
                )));
            }
        }
    }
    let max_len = match bound {
        Some(b) => b,
        None => {
            if has_cycle(n_obj, &arrows) {
                return Err(Error::IllFormed("cyclic quiver needs a word bound".into()));
            }
            n_obj
        }
    };
    // enumerate words by (length, source, word)
    let mut words: Vec<(usize, Vec<usize>)> = (0..n_obj).map(|s| (s, Vec::new())).collect();
    let mut frontier: Vec<(usize, usize, Vec<usize>)> = (0..n_obj).map(|s| (s, s, Vec::new())).collect();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (s, end, w) in &frontier {
            for (g, a) in arrows.iter().enumerate() {
                if a.source == *end {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push((*s, a.target, w2));
                }
            }
        }
        next.sort_by(|a, b| (a.0, &a.2).cmp(&(b.0, &b.2)));
        for (s, _, w) in &next {
            words.push((*s, w.clone()));
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    let mut basis = Vec::with_capacity(words.len());
    let mut index = BTreeMap::new();
    for (i, (s, w)) in words.iter().enumerate() {
        let (label, degree, target) = if w.is_empty() {
            (format!("id_{}", objects[*s]), 0, *s)
        } else {
            let label = w
                .iter()
                .map(|g| arrows[*g].label.as_str())
                .collect::<Vec<_>>()
                .join(separator);
            let degree = w.iter().map(|g| arrows[*g].degree).sum();
            (label, degree, arrows[*w.last().unwrap()].target)
        };
        basis.push(Morphism {
            label,
            degree,
            source: *s,
            target,
        });
        index.insert((*s, w.clone()), i);
    }
    let lookup = |s: usize, w: &[usize]| index.get(&(s, w.to_vec())).copied();
    // differentials of single arrows as vectors over words
    let arrow_d: Vec<Vector<(usize, Vec<usize>)>> = differentials
        .iter()
        .map(|dif| {
            dif.iter()
                .map(|(p, c)| ((p.source, p.arrows.clone()), c.clone()))
                .collect()
        })
        .collect();
    let mut differential = Vec::with_capacity(words.len());
    for (s, w) in &words {
        let mut acc = Vector::zero();
        let mut sign_deg: i64 = 0;
        let mut at = *s;
        for (pos, &g) in w.iter().enumerate() {
            let sign = field.sign(sign_deg);
            for ((_, mid), c) in &arrow_d[g] {
                let mut full = w[..pos].to_vec();
                full.extend_from_slice(mid);
                full.extend_from_slice(&w[pos + 1..]);
                if let Some(k) = lookup(*s, &full) {
                    acc.add_term(k, c * &sign);
                }
            }
            sign_deg += arrows[g].degree as i64;
            at = arrows[g].target;
        }
        let _ = at;
        differential.push(acc);
    }
    let identities = (0..n_obj).map(Some).collect();
    let truncation = bound.map(|b| {
        Truncation::new(
            b,
            arrows.iter().map(|a| (a.source, a.target, a.degree)).collect(),
            n_obj,
        )
    });
    let words_only: Vec<Vec<usize>> = words.iter().map(|(_, w)| w.clone()).collect();
    DgCategory::assemble(
        field,
        objects,
        basis,
        identities,
        differential,
        Composition::Words {
            words: words_only,
            index,
        },
        truncation,
    )
}

fn has_cycle(n: usize, arrows: &[Arrow]) -> bool {
    // Kahn's algorithm on the object graph
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                queue.push(a.target);
            }
        }
    }
    seen < n
}

/// Checks the dg category laws, reporting each failure with a witness.
///
/// For truncated free categories, laws whose output degree is not truncation-exact
/// are skipped.
pub fn validate_dg_category(d: &DgCategory) -> Report {
    let mut r = Report::new();
    let f = d.field;
    let n = d.basis.len();
    let name = |i: usize| d.basis[i].label.clone();
    for i in 0..n {
        let m = &d.basis[i];
        for k in d.differential[i].keys() {
            let t = &d.basis[*k];
            if t.degree != m.degree + 1 || t.source != m.source || t.target != m.target {
                r.fail("differential shape", format!("d({}) ∋ {}", m.label, t.label));
            }
        }
    }
    for s in 0..d.objects.len() {
        if let Some(i) = d.identities[s] {
            if !d.differential[i].is_zero() {
                r.fail("d(identity)", name(i));
            }
        }
    }
    for i in 0..n {
        let m = &d.basis[i];
        if !d.exact_degree(m.source, m.target, m.degree + 1) {
            continue;
        }
        let dd = d.d(&d.differential[i]);
        if !dd.is_zero() {
            r.fail("d^2", name(i));
        }
    }
    let composable: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| d.basis[x].target == d.basis[y].source)
        .collect();
    for &(x, y) in &composable {
        let (mx, my) = (&d.basis[x], &d.basis[y]);
        let p = d.mu_basis(x, y);
        for k in p.keys() {
            let t = &d.basis[*k];
            if t.degree != mx.degree + my.degree || t.source != mx.source || t.target != my.target {
                r.fail("composition shape", format!("{}∘{} ∋ {}", my.label, mx.label, t.label));
            }
        }
        if !d.exact_degree(mx.source, my.target, mx.degree + my.degree + 1) {
            continue;
        }
        if let (Some(t), Some(wx), Some(wy)) = (d.truncation(), d.word(x), d.word(y)) {
            // the product is cut off, and curvature terms may shorten the factors
            if wx.len() + wy.len() > t.bound {
                continue;
            }
        }
        let lhs = d.d(&p);
        let mut rhs = d.mu(&d.differential[x], &Vector::basis(y, f.one()));
        let second = d.mu(&Vector::basis(x, f.one()), &d.differential[y]);
        rhs.add_scaled(&second, &f.sign(mx.degree as i64));
        if lhs != rhs {
            r.fail("leibniz", format!("({},{})", my.label, mx.label));
        }
    }
    for &(x, y) in &composable {
        for z in 0..n {
            if d.basis[y].target != d.basis[z].source {
                continue;
            }
            let xy = d.mu_basis(x, y);
            let left = d.mu(&xy, &Vector::basis(z, f.one()));
            let yz = d.mu_basis(y, z);
            let right = d.mu(&Vector::basis(x, f.one()), &yz);
            if left != right {
                r.fail(
                    "associativity",
                    format!("({},{},{})", name(z), name(y), name(x)),
                );
            }
        }
    }
    for s in 0..d.objects.len() {
        let id = d.identity_vector(s);
        for x in 0..n {
            let bx = Vector::basis(x, f.one());
            if d.basis[x].source == s && d.mu(&id, &bx) != bx {
                r.fail("left unit", format!("{} at {}", name(x), d.objects[s]));
            }
            if d.basis[x].target == s && d.mu(&bx, &id) != bx {
                r.fail("right unit", format!("{} at {}", name(x), d.objects[s]));
            }
        }
    }
    r
}

/// The identity-coefficient retract.
pub fn default_retract(d: &DgCategory) -> Result<Retract, Error> {
    let mut functionals = Vec::new();
    for s in 0..d.objects.len() {
        match d.identities[s] {
            Some(i) => functionals.push(Vector::basis(i, d.field.one())),
            None => {
                return Err(Error::NotSplit {
                    object: d.objects[s].clone(),
                })
            }
        }
    }
    Ok(Retract { functionals })
}

/// Structural retract check: degree-0 endomorphism support and `v_s(id_s) = 1`.
pub fn validate_retract(d: &DgCategory, v: &Retract) -> Report {
    let mut r = Report::new();
    if v.functionals.len() != d.objects.len() {
        r.fail("retract shape", "one functional per object".into());
        return r;
    }
    for (s, fun) in v.functionals.iter().enumerate() {
        for k in fun.keys() {
            let m = &d.basis[*k];
            if m.source != s || m.target != s || m.degree != 0 {
                r.fail("retract support", m.label.clone());
            }
        }
        match d.identities[s] {
            Some(i) if fun.get(&i).is_some_and(|c| c.is_one()) => {}
            _ => r.fail("retract unit", d.objects[s].clone()),
        }
    }
    r
}

/// Compares two presentations after relabeling the basis of `a` by `relabel`.
pub fn same_presentation<F: Fn(&str) -> String>(
    a: &DgCategory,
    b: &DgCategory,
    relabel: F,
) -> Result<(), String> {
    if a.field != b.field || a.objects != b.objects {
        return Err("objects differ".into());
    }
    if a.basis.len() != b.basis.len() {
        return Err(format!("basis sizes {} vs {}", a.basis.len(), b.basis.len()));
    }
    let mut map = Vec::with_capacity(a.basis.len());
    for m in &a.basis {
        let l = relabel(&m.label);
        let j = b.index_of(&l).ok_or_else(|| format!("no counterpart for {}", m.label))?;
        let n = &b.basis[j];
        if (n.degree, n.source, n.target) != (m.degree, m.source, m.target) {
            return Err(format!("{} differs in shape", m.label));
        }
        map.push(j);
    }
    for s in 0..a.objects.len() {
        if a.identities[s].map(|i| map[i]) != b.identities[s] {
            return Err(format!("identity of {}", a.objects[s]));
        }
    }
    for i in 0..a.basis.len() {
        if a.differential[i].map_keys(|k| map[*k]) != b.differential[map[i]] {
            return Err(format!("d({})", a.basis[i].label));
        }
        for j in 0..a.basis.len() {
            if a.mu_basis(i, j).map_keys(|k| map[*k]) != b.mu_basis(map[i], map[j]) {
                return Err(format!("product ({},{})", a.basis[i].label, a.basis[j].label));
            }
        }
    }
    Ok(())
}

/// Small builder used by fixtures and parsers.
#[derive(Clone, Debug)]
pub struct CategoryBuilder {
    field: Field,
    objects: Vec<String>,
    basis: Vec<Morphism>,
    identities: Vec<Option<usize>>,
    differential: Vec<Vec<(String, Scalar)>>,
    products: Vec<(String, String, Vec<(String, Scalar)>)>,
}

impl CategoryBuilder {
    pub fn new(field: Field) -> CategoryBuilder {
        CategoryBuilder {
            field,
            objects: Vec::new(),
            basis: Vec::new(),
            identities: Vec::new(),
            differential: Vec::new(),
            products: Vec::new(),
        }
    }

    /// Adds an object with identity `id_<label>`.
    pub fn object(mut self, label: &str) -> Self {
        let s = self.objects.len();
        self.objects.push(label.into());
        self.identities.push(Some(self.basis.len()));
        self.basis.push(Morphism {
            label: format!("id_{label}"),
            degree: 0,
            source: s,
            target: s,
        });
        self.differential.push(Vec::new());
        self
    }

    /// Adds an object whose identity is the zero vector.
    pub fn object_without_identity(mut self, label: &str) -> Self {
        self.objects.push(label.into());
        self.identities.push(None);
        self
    }

    pub fn morphism(mut self, label: &str, degree: i32, source: &str, target: &str) -> Self {
        let s = self.objects.iter().position(|o| o == source).expect("object");
        let t = self.objects.iter().position(|o| o == target).expect("object");
        self.basis.push(Morphism {
            label: label.into(),
            degree,
            source: s,
            target: t,
        });
        self.differential.push(Vec::new());
        self
    }

    pub fn d(mut self, of: &str, terms: &[(&str, i64)]) -> Self {
        let i = self.basis.iter().position(|m| m.label == of).expect("label");
        self.differential[i] = terms
            .iter()
            .map(|(l, c)| ((*l).to_string(), self.field.int(*c)))
            .collect();
        self
    }

    /// Path-order product `mu(first, second)`.
    pub fn mu(mut self, first: &str, second: &str, terms: &[(&str, i64)]) -> Self {
        let t = terms
            .iter()
            .map(|(l, c)| ((*l).to_string(), self.field.int(*c)))
            .collect();
        self.products.push((first.into(), second.into(), t));
        self
    }

    pub fn build(self) -> Result<DgCategory, Error> {
        let idx = |l: &str| -> Result<usize, Error> {
            self.basis
                .iter()
                .position(|m| m.label == l)
                .ok_or_else(|| Error::UnknownLabel(l.into()))
        };
        let mut differential = Vec::new();
        for terms in &self.differential {
            let mut v = Vector::zero();
            for (l, c) in terms {
                v.add_term(idx(l)?, c.clone());
            }
            differential.push(v);
        }
        let mut products = Vec::new();
        for (a, b, terms) in &self.products {
            let mut v = Vector::zero();
            for (l, c) in terms {
                v.add_term(idx(l)?, c.clone());
            }
            products.push(((idx(a)?, idx(b)?), v));
        }
        DgCategory::from_table(
            self.field,
            self.objects.clone(),
            self.basis.clone(),
            self.identities.clone(),
            differential,
            products,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::linalg::homology_dims;

    #[test]
    fn unit_category_valid() {
        let k = fixtures::k(Field::Rational);
        assert!(validate_dg_category(&k).is_valid());
    }

    #[test]
    fn s_n_valid_with_degree_n_hom() {
        for n in 0..3 {
            let s = fixtures::s_n(Field::Rational, n);
            assert!(validate_dg_category(&s).is_valid());
            let h = s.hom_complex_by_label("1", "2").unwrap();
            assert_eq!(h.space.dim(), 1);
            assert_eq!(h.space.degree(0), n);
            assert!(h.d.is_zero());
        }
    }

    #[test]
    fn corrupted_leibniz_witness() {
        let f = Field::Rational;
        let a2 = fixtures::a2(f);
        let mut bad = a2.clone();
        let gf = bad.index_of("gf").unwrap();
        bad.differential[gf] = Vector::basis(gf, f.one());
        let r = validate_dg_category(&bad);
        assert!(!r.is_valid());
        assert!(r
            .failures
            .iter()
            .any(|x| x.law == "leibniz" && x.witness == "(g,f)"));
    }

    #[test]
    fn retracts() {
        let f = Field::Rational;
        let v = default_retract(&fixtures::k(f)).unwrap();
        assert_eq!(v.functionals[0].len(), 1);
        let ke = fixtures::k_eps(f, 0);
        let v = default_retract(&ke).unwrap();
        let eps = ke.index_of("e").unwrap();
        assert_eq!(v.eval(&ke, &Vector::basis(eps, f.one())), f.zero());
        let dn = fixtures::d_n(f, 1);
        let v = default_retract(&dn).unwrap();
        assert!(validate_retract(&dn, &v).is_valid());
        let zero = CategoryBuilder::new(f).object_without_identity("*").build().unwrap();
        assert!(matches!(default_retract(&zero), Err(Error::NotSplit { .. })));
    }

    #[test]
    fn free_category_examples() {
        let f = Field::Rational;
        let discrete = free_category(f, vec!["a".into(), "b".into()], vec![], vec![], None, "*").unwrap();
        assert_eq!(discrete.basis().len(), 2);
        let ar = |l: &str, s, t| Arrow { label: l.into(), degree: 0, source: s, target: t };
        let line = free_category(
            f,
            vec!["1".into(), "2".into(), "3".into()],
            vec![ar("a", 0, 1), ar("b", 1, 2)],
            vec![vec![], vec![]],
            None,
            "*",
        )
        .unwrap();
        assert_eq!(line.hom(0, 2).len(), 1);
        assert!(validate_dg_category(&line).is_valid());
        let lp = free_category(
            f,
            vec!["p".into()],
            vec![Arrow { label: "x".into(), degree: -1, source: 0, target: 0 }],
            vec![vec![]],
            Some(3),
            "*",
        )
        .unwrap();
        let labels: Vec<&str> = lp.basis().iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels, ["id_p", "x", "x*x", "x*x*x"]);
        assert!(validate_dg_category(&lp).is_valid());
    }

    #[test]
    fn ill_formed_free_differential() {
        let f = Field::Rational;
        let r = free_category(
            f,
            vec!["1".into(), "2".into()],
            vec![
                Arrow { label: "a".into(), degree: 0, source: 0, target: 1 },
                Arrow { label: "b".into(), degree: 1, source: 0, target: 1 },
            ],
            vec![vec![(Path { source: 0, arrows: vec![0, 0] }, f.one())], vec![]],
            None,
            "*",
        );
        assert!(matches!(r, Err(Error::IllFormedDifferential(_))));
    }

    #[test]
    fn hom_complex_examples() {
        let f = Field::Rational;
        let dn = fixtures::d_n(f, 2);
        let h = dn.hom_complex_by_label("1", "2").unwrap();
        assert_eq!(h.space.dim(), 2);
        assert!(homology_dims(&h).unwrap().values().all(|&x| x == 0));
        let disc = free_category(f, vec!["a".into(), "b".into()], vec![], vec![], None, "*").unwrap();
        assert_eq!(disc.hom_complex(0, 1, None).unwrap().space.dim(), 0);
        assert!(matches!(
            disc.hom_complex_by_label("a", "zz"),
            Err(Error::UnknownObject(_))
        ));
    }

    #[test]
    fn truncation_flags() {
        let f = Field::Rational;
        let lp = free_category(
            f,
            vec!["p".into()],
            vec![Arrow { label: "x".into(), degree: -1, source: 0, target: 0 }],
            vec![vec![]],
            Some(3),
            "*",
        )
        .unwrap();
        let t = lp.truncation().unwrap();
        assert!(t.exact(0, 0, -3));
        assert!(!t.exact(0, 0, -4));
        assert!(t.complete(0, 0, -3));
        assert!(!t.complete(0, 0, -5));
        let z = free_category(
            f,
            vec!["p".into()],
            vec![Arrow { label: "y".into(), degree: 0, source: 0, target: 0 }],
            vec![vec![]],
            Some(3),
            "*",
        )
        .unwrap();
        assert!(!z.truncation().unwrap().complete(0, 0, 0));
    }
}
