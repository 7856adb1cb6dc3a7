use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Report};

/// A nondegenerate simplex with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    pub label: String,
    pub dim: usize,
}

/// `s_{j_1} ⋯ s_{j_k} x` with `j_1 > ⋯ > j_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegenerateForm {
    pub base: usize,
    pub word: Vec<usize>,
}

/// A simplex `x ∘ ζ` for a nondegenerate `x` and a monotone surjection `ζ: [n] → [dim x]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Elem {
    pub base: usize,
    pub surj: Vec<usize>,
}

impl Elem {
    pub fn dim(&self) -> usize {
        self.surj.len() - 1
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.surj.iter().enumerate().all(|(i, &j)| i == j)
    }
}

/// Degeneracy word to surjection: `ζ(j) = j − #{w < j}`.
pub fn word_to_surjection(word: &[usize], n: usize) -> Vec<usize> {
    (0..=n).map(|j| j - word.iter().filter(|&&w| w < j).count()).collect()
}

/// Surjection to its decreasing degeneracy word.
pub fn surjection_to_word(z: &[usize]) -> Vec<usize> {
    let mut w: Vec<usize> = (0..z.len().saturating_sub(1)).filter(|&j| z[j] == z[j + 1]).collect();
    w.reverse();
    w
}

/// A finite simplicial set given by its nondegenerate simplices and their faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSimplicialSet {
    pub simplices: Vec<Simplex>,
    /// `faces[x][i] = d_i x`; empty for vertices.
    pub faces: Vec<Vec<DegenerateForm>>,
}

impl FiniteSimplicialSet {
    pub fn new(simplices: Vec<Simplex>, faces: Vec<Vec<DegenerateForm>>) -> Result<FiniteSimplicialSet, Error> {
        if simplices.len() != faces.len() {
            return Err(Error::IllFormed("one face list per simplex".into()));
        }
        let mut seen = BTreeSet::new();
        for s in &simplices {
            if !seen.insert(s.label.clone()) {
                return Err(Error::DuplicateLabel(s.label.clone()));
            }
        }
        for (x, fs) in faces.iter().enumerate() {
            let n = simplices[x].dim;
            let expected = if n == 0 { 0 } else { n + 1 };
            if fs.len() != expected {
                return Err(Error::IllFormed(format!("{} needs {expected} faces", simplices[x].label)));
            }
            for f in fs {
                let b = simplices.get(f.base).ok_or_else(|| Error::IllFormed("face index out of range".into()))?;
                if b.dim + f.word.len() != n - 1 {
                    return Err(Error::IllFormed(format!("face of {} has the wrong dimension", simplices[x].label)));
                }
                if f.word.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(Error::Parse(format!("degeneracy word {:?} is not strictly decreasing", f.word)));
                }
                if f.word.first().is_some_and(|&j| j >= n - 1) {
                    return Err(Error::IllFormed(format!("degeneracy index out of range in a face of {}", simplices[x].label)));
                }
            }
        }
        Ok(FiniteSimplicialSet { simplices, faces })
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.dim).max().unwrap_or(0)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.simplices.iter().position(|s| s.label == label)
    }

    pub fn vertices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.simplices[x].dim == 0).collect()
    }

    pub fn of_dim(&self, n: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.simplices[x].dim == n).collect()
    }

    pub fn elem(&self, x: usize) -> Elem {
        Elem { base: x, surj: (0..=self.simplices[x].dim).collect() }
    }

    pub fn form_to_elem(&self, f: &DegenerateForm) -> Elem {
        let n = self.simplices[f.base].dim + f.word.len();
        Elem { base: f.base, surj: word_to_surjection(&f.word, n) }
    }

    pub fn elem_to_form(&self, e: &Elem) -> DegenerateForm {
        DegenerateForm { base: e.base, word: surjection_to_word(&e.surj) }
    }

    /// `x^*(α)` for `α: [p] → [dim x]` monotone.
    pub fn act(&self, x: usize, alpha: &[usize]) -> Elem {
        let m = self.simplices[x].dim;
        let image: BTreeSet<usize> = alpha.iter().copied().collect();
        match (0..=m).find(|k| !image.contains(k)) {
            None => Elem { base: x, surj: alpha.to_vec() },
            Some(k) => {
                let beta: Vec<usize> = alpha.iter().map(|&j| if j > k { j - 1 } else { j }).collect();
                let face = self.form_to_elem(&self.faces[x][k]);
                self.act_elem(&face, &beta)
            }
        }
    }

    /// `e^*(α)` for a possibly degenerate simplex `e`.
    pub fn act_elem(&self, e: &Elem, alpha: &[usize]) -> Elem {
        let composite: Vec<usize> = alpha.iter().map(|&j| e.surj[j]).collect();
        self.act(e.base, &composite)
    }

    /// `d_i e`.
    pub fn face(&self, e: &Elem, i: usize) -> Elem {
        let alpha: Vec<usize> = (0..=e.dim()).filter(|&j| j != i).collect();
        self.act_elem(e, &alpha)
    }

    /// Vertex `e(j)` as a simplex index.
    pub fn vertex(&self, e: &Elem, j: usize) -> usize {
        self.act_elem(e, &[j]).base
    }

    pub fn first_vertex(&self, x: usize) -> usize {
        self.vertex(&self.elem(x), 0)
    }

    pub fn last_vertex(&self, x: usize) -> usize {
        self.vertex(&self.elem(x), self.simplices[x].dim)
    }

    /// The front face on `0..=i` and back face on `i..=n`.
    pub fn front_back(&self, x: usize, i: usize) -> (Elem, Elem) {
        let n = self.simplices[x].dim;
        let e = self.elem(x);
        (
            self.act_elem(&e, &(0..=i).collect::<Vec<_>>()),
            self.act_elem(&e, &(i..=n).collect::<Vec<_>>()),
        )
    }

    pub fn render(&self, e: &Elem) -> String {
        let w = surjection_to_word(&e.surj);
        let mut s = String::new();
        for j in &w {
            s.push_str(&format!("s{j} "));
        }
        s.push_str(&self.simplices[e.base].label);
        s
    }
}

/// Simplicial identities `d_i d_j = d_{j−1} d_i` for `i < j` on every nondegenerate simplex.
pub fn validate_sset(k: &FiniteSimplicialSet) -> Report {
    let mut r = Report::new();
    for x in 0..k.len() {
        let n = k.simplices[x].dim;
        if n < 2 {
            continue;
        }
        let e = k.elem(x);
        for j in 1..=n {
            for i in 0..j {
                let lhs = k.face(&k.face(&e, j), i);
                let rhs = k.face(&k.face(&e, i), j - 1);
                if lhs != rhs {
                    r.fail(
                        "simplicial identity",
                        format!("d{i} d{j} {} = {} but d{} d{i} = {}", k.simplices[x].label, k.render(&lhs), j - 1, k.render(&rhs)),
                    );
                }
            }
        }
    }
    r
}

fn subset_label(s: &[usize]) -> String {
    if s.iter().all(|&v| v < 10) {
        s.iter().map(|v| v.to_string()).collect()
    } else {
        s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// The simplicial complex on the given nonempty subsets (closed under faces by the caller
/// or by [`subset_complex`]), with subsets as labels.
fn from_subsets(mut sets: Vec<Vec<usize>>) -> FiniteSimplicialSet {
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    sets.dedup();
    let index: BTreeMap<Vec<usize>, usize> = sets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let simplices = sets.iter().map(|s| Simplex { label: subset_label(s), dim: s.len() - 1 }).collect();
    let faces = sets
        .iter()
        .map(|s| {
            if s.len() == 1 {
                return Vec::new();
            }
            (0..s.len())
                .map(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    DegenerateForm { base: index[&t], word: Vec::new() }
                })
                .collect()
        })
        .collect();
    FiniteSimplicialSet { simplices, faces }
}

fn nonempty_subsets(s: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << s.len()) {
        out.push((0..s.len()).filter(|i| mask >> i & 1 == 1).map(|i| s[i]).collect());
    }
    out
}

/// The simplicial complex generated by the given facets.
pub fn subset_complex(facets: &[Vec<usize>]) -> FiniteSimplicialSet {
    let mut sets = Vec::new();
    for f in facets {
        let mut f = f.clone();
        f.sort_unstable();
        f.dedup();
        sets.extend(nonempty_subsets(&f));
    }
    from_subsets(sets)
}

/// `Δ^n` with subsets of `{0..n}` as labels.
pub fn standard_simplex(n: usize) -> FiniteSimplicialSet {
    subset_complex(&[(0..=n).collect()])
}

/// `∂Δ^n`.
pub fn boundary(n: usize) -> FiniteSimplicialSet {
    let all: Vec<usize> = (0..=n).collect();
    let facets: Vec<Vec<usize>> = (0..=n)
        .map(|i| all.iter().copied().filter(|&v| v != i).collect())
        .collect();
    subset_complex(&facets)
}

/// `K/A` for a nonempty subcomplex `A`, collapsed to the vertex `*`.
pub fn quotient(k: &FiniteSimplicialSet, a: &[usize]) -> Result<FiniteSimplicialSet, Error> {
    let a: BTreeSet<usize> = a.iter().copied().collect();
    if a.is_empty() {
        return Err(Error::IllFormed("collapsed subcomplex is empty".into()));
    }
    for &x in &a {
        for f in &k.faces[x] {
            if !a.contains(&f.base) {
                return Err(Error::IllFormed(format!("{} is collapsed but its faces are not", k.simplices[x].label)));
            }
        }
    }
    let keep: Vec<usize> = (0..k.len()).filter(|x| !a.contains(x)).collect();
    let mut new_index = BTreeMap::new();
    let mut simplices = vec![Simplex { label: "*".into(), dim: 0 }];
    for (i, &x) in keep.iter().enumerate() {
        new_index.insert(x, i + 1);
        simplices.push(k.simplices[x].clone());
    }
    let mut faces = vec![Vec::new()];
    for &x in &keep {
        let fs = k.faces[x]
            .iter()
            .map(|f| {
                if a.contains(&f.base) {
                    let n = k.simplices[x].dim - 1;
                    DegenerateForm { base: 0, word: (0..n).rev().collect() }
                } else {
                    DegenerateForm { base: new_index[&f.base], word: f.word.clone() }
                }
            })
            .collect();
        faces.push(fs);
    }
    FiniteSimplicialSet::new(simplices, faces)
}

/// `K/A` where `A` is the subcomplex generated by simplices with the given labels.
pub fn quotient_by_labels(k: &FiniteSimplicialSet, labels: &[&str]) -> Result<FiniteSimplicialSet, Error> {
    let mut a = BTreeSet::new();
    let mut stack = Vec::new();
    for l in labels {
        stack.push(k.index_of(l).ok_or_else(|| Error::UnknownLabel((*l).into()))?);
    }
    while let Some(x) = stack.pop() {
        if a.insert(x) {
            stack.extend(k.faces[x].iter().map(|f| f.base));
        }
    }
    quotient(k, &a.into_iter().collect::<Vec<_>>())
}

/// `S^n = Δ^n/∂Δ^n`, one vertex and one nondegenerate `n`-simplex.
pub fn sphere(n: usize) -> FiniteSimplicialSet {
    let d = standard_simplex(n);
    let all: Vec<usize> = (0..d.len()).filter(|&x| d.simplices[x].dim < n).collect();
    quotient(&d, &all).expect("the boundary is a subcomplex")
}

/// Twenty small simplicial sets used by tests and the acceptance suite.
pub fn fixtures() -> Vec<(String, FiniteSimplicialSet)> {
    let mut out: Vec<(String, FiniteSimplicialSet)> = Vec::new();
    for n in 0..=4 {
        out.push((format!("Delta^{n}"), standard_simplex(n)));
    }
    for n in 2..=4 {
        out.push((format!("dDelta^{n}"), boundary(n)));
    }
    for n in 1..=3 {
        out.push((format!("S^{n}"), sphere(n)));
    }
    let d2 = standard_simplex(2);
    let d3 = standard_simplex(3);
    out.push(("Delta^2/{02}".into(), quotient_by_labels(&d2, &["02"]).unwrap()));
    out.push(("Lambda^2_0".into(), subset_complex(&[vec![0, 1], vec![0, 2]])));
    out.push(("Lambda^2_1".into(), subset_complex(&[vec![0, 1], vec![1, 2]])));
    out.push(("Lambda^3_1".into(), subset_complex(&[vec![1, 2, 3], vec![0, 1, 3], vec![0, 1, 2]])));
    out.push(("Delta^3/{03}".into(), quotient_by_labels(&d3, &["03"]).unwrap()));
    out.push(("Delta^3/{012}".into(), quotient_by_labels(&d3, &["012"]).unwrap()));
    out.push(("square".into(), subset_complex(&[vec![0, 1, 2], vec![1, 2, 3]])));
    out.push(("Delta^2+Delta^1".into(), subset_complex(&[vec![0, 1, 2], vec![3, 4]])));
    out.push(("Delta^2/{0,2}".into(), quotient_by_labels(&d2, &["0", "2"]).unwrap()));
    out
}

/// A simplicial map, given on nondegenerate simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub images: Vec<Elem>,
}

impl SimplicialMap {
    pub fn apply(&self, target: &FiniteSimplicialSet, e: &Elem) -> Elem {
        target.act_elem(&self.images[e.base], &e.surj)
    }

    pub fn vertex_map(&self, source: &FiniteSimplicialSet) -> BTreeMap<usize, usize> {
        source.vertices().into_iter().map(|v| (v, self.images[v].base)).collect()
    }
}

/// Dimension and face compatibility; failures are `NotSimplicial`.
pub fn validate_map(k: &FiniteSimplicialSet, l: &FiniteSimplicialSet, f: &SimplicialMap) -> Result<(), Error> {
    if f.images.len() != k.len() {
        return Err(Error::NotSimplicial { witness: "wrong number of images".into() });
    }
    for x in 0..k.len() {
        let img = &f.images[x];
        if img.base >= l.len() || img.dim() != k.simplices[x].dim || img.surj.last() != Some(&l.simplices[img.base].dim) {
            return Err(Error::NotSimplicial { witness: k.simplices[x].label.clone() });
        }
        let e = k.elem(x);
        for i in 0..k.faces[x].len() {
            if f.apply(l, &k.face(&e, i)) != l.face(img, i) {
                return Err(Error::NotSimplicial { witness: format!("d{i} {}", k.simplices[x].label) });
            }
        }
    }
    Ok(())
}

pub fn compose_maps(l: &FiniteSimplicialSet, second: &SimplicialMap, first: &SimplicialMap) -> SimplicialMap {
    SimplicialMap { images: first.images.iter().map(|e| second.apply(l, e)).collect() }
}

pub fn identity_map(k: &FiniteSimplicialSet) -> SimplicialMap {
    SimplicialMap { images: (0..k.len()).map(|x| k.elem(x)).collect() }
}

/// `Δ^m → Δ^n` induced by a monotone `α: [m] → [n]`.
pub fn simplex_map(m: usize, n: usize, alpha: &[usize]) -> Result<SimplicialMap, Error> {
    if alpha.len() != m + 1 || alpha.windows(2).any(|w| w[0] > w[1]) || alpha.iter().any(|&a| a > n) {
        return Err(Error::NotSimplicial { witness: format!("{alpha:?} is not monotone into [{n}]") });
    }
    let src = standard_simplex(m);
    let tgt = standard_simplex(n);
    Ok(SimplicialMap {
        images: src
            .simplices
            .iter()
            .map(|s| {
                let verts: Vec<usize> = label_vertices(&s.label).into_iter().map(|v| alpha[v]).collect();
                let mut image = verts.clone();
                image.dedup();
                let base = tgt.index_of(&subset_label(&image)).unwrap();
                let surj = verts.iter().map(|v| image.iter().position(|w| w == v).unwrap()).collect();
                Elem { base, surj }
            })
            .collect(),
    })
}

/// Vertices of a subset label produced by [`standard_simplex`].
pub fn label_vertices(label: &str) -> Vec<usize> {
    if label.contains(',') {
        label.split(',').map(|t| t.parse().unwrap()).collect()
    } else {
        label.chars().map(|c| c.to_digit(10).unwrap() as usize).collect()
    }
}

/// The quotient map `K → K/A` onto a set built by [`quotient`] with the same `A`.
pub fn quotient_map(k: &FiniteSimplicialSet, q: &FiniteSimplicialSet, a: &[usize]) -> SimplicialMap {
    let images = (0..k.len())
        .map(|x| {
            let n = k.simplices[x].dim;
            if a.contains(&x) {
                Elem { base: 0, surj: vec![0; n + 1] }
            } else {
                q.elem(q.index_of(&k.simplices[x].label).unwrap())
            }
        })
        .collect();
    SimplicialMap { images }
}
