use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::coalgebra::{CoalgebraMorphism, PointedCurvedCoalgebra};
use crate::curved::AElem;
use crate::error::{Error, Report};
use crate::linalg::Echelon;
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// A comodule over a pointed curved coalgebra, split by objects, with its reduced coaction.
///
/// Right: `m ↦ Σ m'⊗c` with `c ∈ C̄(obj m', obj m)`.
/// Left: `m ↦ Σ c⊗m'` with `c ∈ C̄(obj m, obj m')`.
/// Both are stored as pairs `(m', c)`; the grouplike part is implied by `objects`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comodule {
    pub field: Field,
    pub side: Side,
    pub labels: Vec<String>,
    pub degrees: Vec<i32>,
    pub objects: Vec<usize>,
    pub differential: Vec<Vector<usize>>,
    pub coaction: Vec<Vector<(usize, usize)>>,
}

impl Comodule {
    pub fn zero(field: Field, side: Side) -> Comodule {
        Comodule {
            field,
            side,
            labels: Vec::new(),
            degrees: Vec::new(),
            objects: Vec::new(),
            differential: Vec::new(),
            coaction: Vec::new(),
        }
    }

    /// `k_X`: one basis element in degree `degree` at the grouplike `X`.
    pub fn simple(c: &PointedCurvedCoalgebra, side: Side, x: usize, degree: i32) -> Comodule {
        Comodule {
            field: c.field,
            side,
            labels: vec![format!("k_{}", c.objects[x])],
            degrees: vec![degree],
            objects: vec![x],
            differential: vec![Vector::zero()],
            coaction: vec![Vector::zero()],
        }
    }

    /// `C` coacting on itself; a comodule exactly when `h = 0`.
    ///
    /// Basis: the grouplikes `e_s`, then `C̄` in its own order.
    pub fn regular(c: &PointedCurvedCoalgebra, side: Side) -> Comodule {
        let n = c.objects.len();
        let one = c.field.one();
        let mut labels: Vec<String> = c.objects.iter().map(|o| format!("e_{o}")).collect();
        let mut degrees = vec![0; n];
        let mut objects: Vec<usize> = (0..n).collect();
        let mut differential = vec![Vector::zero(); n];
        let mut coaction = vec![Vector::zero(); n];
        for (i, b) in c.basis.iter().enumerate() {
            labels.push(b.label.clone());
            degrees.push(b.degree);
            differential.push(c.differential[i].map_keys(|k| k + n));
            let mut rho = Vector::zero();
            match side {
                Side::Right => {
                    objects.push(b.target);
                    rho.add_term((b.source, i), one.clone());
                    for ((p, q), x) in &c.coproduct[i] {
                        rho.add_term((p + n, *q), x.clone());
                    }
                }
                Side::Left => {
                    objects.push(b.source);
                    rho.add_term((b.target, i), one.clone());
                    for ((p, q), x) in &c.coproduct[i] {
                        rho.add_term((q + n, *p), x.clone());
                    }
                }
            }
            coaction.push(rho);
        }
        Comodule { field: c.field, side, labels, degrees, objects, differential, coaction }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn d(&self, v: &Vector<usize>) -> Vector<usize> {
        v.map_linear(|i| self.differential[*i].clone())
    }

    pub fn coact(&self, v: &Vector<usize>) -> Vector<(usize, usize)> {
        v.map_linear(|i| self.coaction[*i].clone())
    }

    /// `Σ φ(c) m'` over the reduced coaction.
    pub fn act_functional(&self, phi: &Vector<usize>, m: usize) -> Vector<usize> {
        let mut out = Vector::zero();
        for ((mp, c), x) in &self.coaction[m] {
            if let Some(y) = phi.get(c) {
                out.add_term(*mp, x * y);
            }
        }
        out
    }

    /// Basis elements in object `s` and degree `n`.
    pub fn in_component(&self, s: usize, n: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.objects[i] == s && self.degrees[i] == n).collect()
    }
}

fn validate_shape(c: &PointedCurvedCoalgebra, m: &Comodule, r: &mut Report) {
    let n = m.dim();
    if m.degrees.len() != n || m.objects.len() != n || m.differential.len() != n || m.coaction.len() != n {
        r.fail("comodule shape", "field lengths differ".into());
        return;
    }
    for i in 0..n {
        if m.objects[i] >= c.objects.len() {
            r.fail("comodule shape", format!("{} has an unknown object", m.labels[i]));
            continue;
        }
        for j in m.differential[i].keys() {
            if *j >= n || m.objects[*j] != m.objects[i] || m.degrees[*j] != m.degrees[i] + 1 {
                r.fail("differential shape", format!("d({})", m.labels[i]));
            }
        }
        for (mp, k) in m.coaction[i].keys() {
            if *mp >= n || *k >= c.dim() {
                r.fail("coaction shape", format!("{} out of range", m.labels[i]));
                continue;
            }
            let b = &c.basis[*k];
            let (from, to) = match m.side {
                Side::Right => (m.objects[*mp], m.objects[i]),
                Side::Left => (m.objects[i], m.objects[*mp]),
            };
            if b.source != from || b.target != to || b.degree + m.degrees[*mp] != m.degrees[i] {
                r.fail("coaction shape", format!("{} ∋ {}⊗{}", m.labels[i], m.labels[*mp], b.label));
            }
        }
    }
}

/// Coassociativity, compatibility with `d`, and `d² = −h∗m` (right) or `d² = h∗m` (left).
pub fn validate_comodule(c: &PointedCurvedCoalgebra, m: &Comodule) -> Report {
    let f = m.field;
    let mut r = Report::new();
    validate_shape(c, m, &mut r);
    if !r.is_valid() {
        return r;
    }
    for i in 0..m.dim() {
        let mut lhs: Vector<(usize, usize, usize)> = Vector::zero();
        let mut rhs: Vector<(usize, usize, usize)> = Vector::zero();
        for ((mp, k), x) in &m.coaction[i] {
            for ((mpp, k2), y) in &m.coaction[*mp] {
                match m.side {
                    Side::Right => lhs.add_term((*mpp, *k2, *k), x * y),
                    Side::Left => lhs.add_term((*k, *k2, *mpp), x * y),
                }
            }
            for ((p, q), y) in &c.coproduct[*k] {
                match m.side {
                    Side::Right => rhs.add_term((*mp, *p, *q), x * y),
                    Side::Left => rhs.add_term((*p, *q, *mp), x * y),
                }
            }
        }
        if lhs != rhs {
            r.fail("coassociativity", m.labels[i].clone());
        }
        let lhs = m.coact(&m.differential[i]);
        let mut rhs: Vector<(usize, usize)> = Vector::zero();
        for ((mp, k), x) in &m.coaction[i] {
            let (sm, sc) = match m.side {
                Side::Right => (f.one(), f.sign(m.degrees[*mp] as i64)),
                Side::Left => (f.sign(c.basis[*k].degree as i64), f.one()),
            };
            for (mq, y) in &m.differential[*mp] {
                rhs.add_term((*mq, *k), &(x * y) * &sm);
            }
            for (k2, y) in &c.differential[*k] {
                rhs.add_term((*mp, *k2), &(x * y) * &sc);
            }
        }
        if lhs != rhs {
            r.fail("coaction commutes with d", m.labels[i].clone());
        }
        let d2 = m.d(&m.differential[i]);
        let mut h = m.act_functional(&c.curvature, i);
        if m.side == Side::Right {
            h = h.neg();
        }
        if d2 != h {
            r.fail("d² = h∗m", m.labels[i].clone());
        }
    }
    r
}

/// `N □_C M` for a right comodule `N` and a left comodule `M`, as vectors in `N ⊗ M`,
/// one list per total degree.
pub fn cotensor(c: &PointedCurvedCoalgebra, n: &Comodule, m: &Comodule) -> Result<BTreeMap<i32, Vec<Vector<(usize, usize)>>>, Error> {
    if n.side != Side::Right || m.side != Side::Left {
        return Err(Error::Mismatch("cotensor takes a right and a left comodule".into()));
    }
    if n.field != m.field || n.field != c.field {
        return Err(Error::FieldMismatch { left: n.field, right: m.field });
    }
    let f = c.field;
    let mut by_degree: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
    for i in 0..n.dim() {
        for j in 0..m.dim() {
            by_degree.entry(n.degrees[i] + m.degrees[j]).or_default().push((i, j));
        }
    }
    let mut out = BTreeMap::new();
    for (deg, pairs) in by_degree {
        let mut rows: BTreeMap<(usize, AElem, usize), Vector<usize>> = BTreeMap::new();
        for (col, &(i, j)) in pairs.iter().enumerate() {
            rows.entry((i, AElem::Idem(n.objects[i]), j)).or_default().add_term(col, f.one());
            rows.entry((i, AElem::Idem(m.objects[j]), j)).or_default().add_term(col, -f.one());
            for ((ip, k), x) in &n.coaction[i] {
                rows.entry((*ip, AElem::Gen(*k), j)).or_default().add_term(col, x.clone());
            }
            for ((jp, k), x) in &m.coaction[j] {
                rows.entry((i, AElem::Gen(*k), *jp)).or_default().add_term(col, -x);
            }
        }
        let ech = Echelon::new(f, pairs.len(), rows.into_values().collect());
        let basis: Vec<Vector<(usize, usize)>> = ech.kernel(f).into_iter().map(|v| v.map_keys(|p| pairs[*p])).collect();
        if !basis.is_empty() {
            out.insert(deg, basis);
        }
    }
    Ok(out)
}

/// Degree-`p` comodule maps `M → N`, given by their values on the basis of `M`.
#[derive(Clone, Debug)]
pub struct ComoduleMaps {
    pub degree: i32,
    unknowns: Vec<(usize, usize)>,
    free: Vec<usize>,
    pub basis: Vec<Vec<Vector<usize>>>,
}

impl ComoduleMaps {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a graded map in `basis`, or `None` if it is not a comodule map.
    pub fn coordinates(&self, map: &[Vector<usize>]) -> Option<Vector<usize>> {
        let pos: BTreeMap<(usize, usize), usize> = self.unknowns.iter().enumerate().map(|(p, u)| (*u, p)).collect();
        let mut flat: Vector<usize> = Vector::zero();
        for (i, v) in map.iter().enumerate() {
            for (j, x) in v {
                flat.add_term(*pos.get(&(i, *j))?, x.clone());
            }
        }
        let coords: Vector<usize> = self
            .free
            .iter()
            .enumerate()
            .filter_map(|(b, col)| flat.get(col).map(|x| (b, x.clone())))
            .collect();
        let mut rebuilt: Vec<Vector<usize>> = vec![Vector::zero(); map.len()];
        for (b, x) in &coords {
            for (i, v) in self.basis[*b].iter().enumerate() {
                rebuilt[i].add_scaled(v, x);
            }
        }
        (rebuilt == map).then_some(coords)
    }
}

/// Degree-`p` graded maps `M → N` preserving objects and commuting with the coaction.
pub fn comodule_maps(m: &Comodule, n: &Comodule, p: i32) -> ComoduleMaps {
    let f = m.field;
    let unknowns: Vec<(usize, usize)> = (0..m.dim())
        .flat_map(|i| {
            (0..n.dim())
                .filter(move |&j| n.objects[j] == m.objects[i] && n.degrees[j] == m.degrees[i] + p)
                .map(move |j| (i, j))
        })
        .collect();
    let pos: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(q, u)| (*u, q)).collect();
    let mut rows: BTreeMap<(usize, usize, usize), Vector<usize>> = BTreeMap::new();
    for (col, &(i, j)) in unknowns.iter().enumerate() {
        for ((jp, k), x) in &n.coaction[j] {
            rows.entry((i, *jp, *k)).or_default().add_term(col, x.clone());
        }
    }
    for i in 0..m.dim() {
        for ((ip, k), x) in &m.coaction[i] {
            for (_, j) in unknowns.iter().filter(|(a, _)| a == ip) {
                rows.entry((i, *j, *k)).or_default().add_term(pos[&(*ip, *j)], -x);
            }
        }
    }
    let ech = Echelon::new(f, unknowns.len(), rows.into_values().collect());
    let pivots: alloc::collections::BTreeSet<usize> = ech.pivots().into_iter().collect();
    let free: Vec<usize> = (0..unknowns.len()).filter(|c| !pivots.contains(c)).collect();
    let basis = ech
        .kernel(f)
        .into_iter()
        .map(|v| {
            let mut map = vec![Vector::zero(); m.dim()];
            for (q, x) in &v {
                let (i, j) = unknowns[*q];
                map[i].add_term(j, x.clone());
            }
            map
        })
        .collect();
    ComoduleMaps { degree: p, unknowns, free, basis }
}

/// `D(ψ) = d_N ψ − (−1)^p ψ d_M`.
pub fn hom_differential(m: &Comodule, n: &Comodule, p: i32, psi: &[Vector<usize>]) -> Vec<Vector<usize>> {
    let f = m.field;
    (0..m.dim())
        .map(|i| {
            let mut v = n.d(&psi[i]);
            let back = m.differential[i].map_linear(|k| psi[*k].clone());
            v.add_scaled(&back, &-f.sign(p as i64));
            v
        })
        .collect()
}

/// Degree range that can carry maps `M → N`.
pub fn hom_degrees(m_degrees: &[i32], n_degrees: &[i32]) -> Vec<i32> {
    let mut ps: Vec<i32> = m_degrees.iter().flat_map(|a| n_degrees.iter().map(move |b| b - a)).collect();
    ps.sort_unstable();
    ps.dedup();
    ps
}

/// Dimension of the closed degree-0 comodule maps `M → N`.
pub fn closed_maps_dim(m: &Comodule, n: &Comodule) -> usize {
    let f = m.field;
    let zero = comodule_maps(m, n, 0);
    let mut rows: BTreeMap<(usize, usize), Vector<usize>> = BTreeMap::new();
    for (b, psi) in zero.basis.iter().enumerate() {
        for (i, v) in hom_differential(m, n, 0, psi).iter().enumerate() {
            for (j, x) in v {
                rows.entry((i, *j)).or_default().add_term(b, x.clone());
            }
        }
    }
    Echelon::new(f, zero.dim(), rows.into_values().collect()).kernel(f).len()
}

/// `R_f`: a right `C`-comodule viewed over `D` along `(f, a)`.
///
/// Coaction `m ↦ Σ m'⊗f(c)`, differential `d − Σ (−1)^{|m'|} a(c) m'`.
pub fn restrict(c: &PointedCurvedCoalgebra, morphism: &CoalgebraMorphism, m: &Comodule) -> Result<Comodule, Error> {
    if m.side != Side::Right {
        return Err(Error::Mismatch("restriction takes right comodules".into()));
    }
    let f = c.field;
    let mut out = m.clone();
    out.objects = m.objects.iter().map(|&o| morphism.object_map[o]).collect();
    for i in 0..m.dim() {
        let mut rho = Vector::zero();
        for ((mp, k), x) in &m.coaction[i] {
            for (k2, y) in &morphism.linear[*k] {
                rho.add_term((*mp, *k2), x * y);
            }
            if let Some(a) = morphism.functional.get(k) {
                let s: Scalar = f.sign(m.degrees[*mp] as i64 + 1);
                out.differential[i].add_term(*mp, &(x * a) * &s);
            }
        }
        out.coaction[i] = rho;
    }
    Ok(out)
}
