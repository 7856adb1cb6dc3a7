use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::comodule::{comodule_maps, hom_degrees, hom_differential, Comodule, Side};
use super::module::Module;
use crate::barcobar::{mc_check_report, MCElement};
use crate::coalgebra::PointedCurvedCoalgebra;
use crate::curved::AElem;
use crate::dgcat::DgCategory;
use crate::error::{Error, Report};
use crate::vector::Vector;

fn check_inputs(c: &PointedCurvedCoalgebra, a: &DgCategory, tau: &MCElement) -> Result<(), Error> {
    if c.field != a.field {
        return Err(Error::FieldMismatch { left: c.field, right: a.field });
    }
    let r = mc_check_report(c, a, tau);
    if !r.is_valid() {
        return Err(Error::Mismatch(format!("τ is not a Maurer–Cartan element: {r}")));
    }
    Ok(())
}

/// Basis of `N ⊗^τ A`: pairs `(n, a)` with `a` out of `O(obj n)`.
fn module_basis(a: &DgCategory, tau: &MCElement, n: &Comodule) -> Vec<(usize, usize)> {
    (0..n.dim())
        .flat_map(|i| {
            let s = tau.object_map[n.objects[i]];
            (0..a.objects().len()).flat_map(move |t| a.hom(s, t).iter().map(move |&k| (i, k)))
        })
        .collect()
}

/// `N ⊗^τ A`, free on `N`: `d(n⊗a) = dn⊗a + (−1)^{|n|} n⊗da + Σ (−1)^{|n'|} n'⊗τ(c)·a`.
pub fn twist_module(c: &PointedCurvedCoalgebra, a: &DgCategory, tau: &MCElement, n: &Comodule) -> Result<Module, Error> {
    check_inputs(c, a, tau)?;
    if n.side != Side::Right {
        return Err(Error::Mismatch("twist_module takes a right comodule".into()));
    }
    let f = a.field;
    let basis = module_basis(a, tau, n);
    let pos: BTreeMap<(usize, usize), usize> = basis.iter().enumerate().map(|(p, b)| (*b, p)).collect();
    let lift = |i: usize, v: &Vector<usize>| -> Vector<usize> { v.map_keys(|k| pos[&(i, *k)]) };
    let mut action = BTreeMap::new();
    let mut differential = Vec::with_capacity(basis.len());
    for &(i, k) in &basis {
        let m = a.morphism(k);
        for u in 0..a.objects().len() {
            for &b in a.hom(m.target, u) {
                let w = a.mu_basis(k, b);
                if !w.is_zero() {
                    action.insert((pos[&(i, k)], b), lift(i, &w));
                }
            }
        }
        let ak = Vector::basis(k, f.one());
        let mut v = Vector::zero();
        for (j, x) in &n.differential[i] {
            v.add_term(pos[&(*j, k)], x.clone());
        }
        v.add_scaled(&lift(i, a.differential(k)), &f.sign(n.degrees[i] as i64));
        for ((np, cc), x) in &n.coaction[i] {
            let w = a.mu(&tau.xi[*cc], &ak);
            v.add_scaled(&lift(*np, &w), &(x * &f.sign(n.degrees[*np] as i64)));
        }
        differential.push(v);
    }
    Ok(Module {
        field: f,
        labels: basis.iter().map(|&(i, k)| format!("{}⊗{}", n.labels[i], a.morphism(k).label)).collect(),
        degrees: basis.iter().map(|&(i, k)| n.degrees[i] + a.morphism(k).degree).collect(),
        objects: basis.iter().map(|&(_, k)| a.morphism(k).target).collect(),
        differential,
        action,
    })
}

/// Basis of `M ⊗^τ C`: pairs `(m, c̃)` with `c̃` a grouplike or a basis element of `C̄`
/// whose source maps to the object of `m`.
fn comodule_basis(c: &PointedCurvedCoalgebra, tau: &MCElement, m: &Module) -> Vec<(usize, AElem)> {
    let mut out = Vec::new();
    for s in 0..c.objects.len() {
        for v in m.value(tau.object_map[s]) {
            out.push((v, AElem::Idem(s)));
        }
    }
    for (k, b) in c.basis.iter().enumerate() {
        for v in m.value(tau.object_map[b.source]) {
            out.push((v, AElem::Gen(k)));
        }
    }
    out
}

/// `M ⊗^τ C`, cofree on `M`:
/// `d(m⊗c̃) = dm⊗c̃ + (−1)^{|m|} m⊗dc̃ − (−1)^{|m|} Σ (m·τ(c'))⊗c̃''` over `Δc̃` with `c' ∈ C̄`.
pub fn twist_comodule(c: &PointedCurvedCoalgebra, a: &DgCategory, tau: &MCElement, m: &Module) -> Result<Comodule, Error> {
    check_inputs(c, a, tau)?;
    let f = c.field;
    let basis = comodule_basis(c, tau, m);
    let pos: BTreeMap<(usize, AElem), usize> = basis.iter().enumerate().map(|(p, b)| (*b, p)).collect();
    let mut labels = Vec::new();
    let mut degrees = Vec::new();
    let mut objects = Vec::new();
    let mut differential = Vec::new();
    let mut coaction = Vec::new();
    for &(v, ct) in &basis {
        let sv = f.sign(m.degrees[v] as i64);
        let mut d = Vector::zero();
        for (w, x) in &m.differential[v] {
            d.add_term(pos[&(*w, ct)], x.clone());
        }
        let mut rho = Vector::zero();
        match ct {
            AElem::Idem(s) => {
                labels.push(format!("{}⊗e_{}", m.labels[v], c.objects[s]));
                degrees.push(m.degrees[v]);
                objects.push(s);
            }
            AElem::Gen(k) => {
                let b = &c.basis[k];
                labels.push(format!("{}⊗{}", m.labels[v], b.label));
                degrees.push(m.degrees[v] + b.degree);
                objects.push(b.target);
                for (k2, x) in &c.differential[k] {
                    d.add_term(pos[&(v, AElem::Gen(*k2))], x * &sv);
                }
                let mut split: Vec<(usize, AElem, crate::scalar::Scalar)> = vec![(k, AElem::Idem(b.target), f.one())];
                for ((p, q), x) in &c.coproduct[k] {
                    split.push((*p, AElem::Gen(*q), x.clone()));
                }
                let one = Vector::basis(v, f.one());
                for (first, rest, x) in split {
                    let moved = m.act(&one, &tau.xi[first]);
                    for (w, y) in &moved {
                        d.add_term(pos[&(*w, rest)], -(&(&x * y) * &sv));
                    }
                }
                rho.add_term((pos[&(v, AElem::Idem(b.source))], k), f.one());
                for ((p, q), x) in &c.coproduct[k] {
                    rho.add_term((pos[&(v, AElem::Gen(*p))], *q), x.clone());
                }
            }
        }
        differential.push(d);
        coaction.push(rho);
    }
    Ok(Comodule { field: f, side: Side::Right, labels, degrees, objects, differential, coaction })
}

/// One degree of the adjunction certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgRow {
    pub degree: i32,
    /// `Hom_A(N ⊗^τ A, M)` in this degree.
    pub module_side: usize,
    /// `Hom_C(N, M ⊗^τ C)` in this degree.
    pub comodule_side: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgCertificate {
    pub rows: Vec<FgRow>,
    pub report: Report,
}

impl FgCertificate {
    pub fn is_valid(&self) -> bool {
        self.report.is_valid() && self.rows.iter().all(|r| r.module_side == r.comodule_side)
    }
}

/// Mutually inverse chain isomorphisms
/// `Hom_A(N ⊗^τ A, M) ⇄ Hom_C(N, M ⊗^τ C)`, both identified with `Hom_{C₀}(N, M)`.
///
/// `Φ(φ)(n) = φ(n)⊗e + Σ φ(n')⊗c` over the coaction, `Ψ(ψ)(n)` = the grouplike component.
pub fn fg_adjunction_check(
    c: &PointedCurvedCoalgebra,
    a: &DgCategory,
    tau: &MCElement,
    n: &Comodule,
    m: &Module,
) -> Result<FgCertificate, Error> {
    let f = c.field;
    let free = twist_module(c, a, tau, n)?;
    let cofree = twist_comodule(c, a, tau, m)?;
    let gpos: BTreeMap<(usize, AElem), usize> = comodule_basis(c, tau, m).into_iter().enumerate().map(|(p, b)| (b, p)).collect();
    let fbasis = module_basis(a, tau, n);
    let fpos: BTreeMap<(usize, usize), usize> = fbasis.iter().enumerate().map(|(p, b)| (*b, p)).collect();
    let mut report = Report::new();
    let mut rows = Vec::new();
    // a module map φ out of the free module is its list of values φ(n ⊗ id)
    let extend = |phi: &[Vector<usize>], v: &Vector<usize>| -> Vector<usize> {
        let mut out = Vector::zero();
        for (p, x) in v {
            let (i, k) = fbasis[*p];
            out.add_scaled(&m.act(&phi[i], &Vector::basis(k, f.one())), x);
        }
        out
    };
    let generator = |i: usize| -> usize {
        let s = tau.object_map[n.objects[i]];
        fpos[&(i, a.identity(s).expect("identities"))]
    };
    let d_x = |p: i32, phi: &[Vector<usize>]| -> Vec<Vector<usize>> {
        (0..n.dim())
            .map(|i| {
                let mut v = m.d(&phi[i]);
                v.add_scaled(&extend(phi, &free.differential[generator(i)]), &-f.sign(p as i64));
                v
            })
            .collect()
    };
    let big_phi = |phi: &[Vector<usize>]| -> Vec<Vector<usize>> {
        (0..n.dim())
            .map(|i| {
                let mut out = phi[i].map_keys(|v| gpos[&(*v, AElem::Idem(n.objects[i]))]);
                for ((np, k), x) in &n.coaction[i] {
                    out.add_scaled(&phi[*np].map_keys(|v| gpos[&(*v, AElem::Gen(*k))]), x);
                }
                out
            })
            .collect()
    };
    let big_psi = |psi: &[Vector<usize>]| -> Vec<Vector<usize>> {
        (0..n.dim())
            .map(|i| {
                let s = n.objects[i];
                m.value(tau.object_map[s])
                    .into_iter()
                    .filter_map(|v| psi[i].get(&gpos[&(v, AElem::Idem(s))]).map(|x| (v, x.clone())))
                    .collect()
            })
            .collect()
    };
    for p in hom_degrees(&n.degrees, &m.degrees) {
        let x_basis: Vec<Vec<Vector<usize>>> = (0..n.dim())
            .flat_map(|i| {
                let s = tau.object_map[n.objects[i]];
                m.value(s)
                    .into_iter()
                    .filter(move |&v| m.degrees[v] == n.degrees[i] + p)
                    .map(move |v| (i, v))
            })
            .map(|(i, v)| {
                let mut phi = vec![Vector::zero(); n.dim()];
                phi[i] = Vector::basis(v, f.one());
                phi
            })
            .collect();
        let y = comodule_maps(n, &cofree, p);
        let y_next = comodule_maps(n, &cofree, p + 1);
        rows.push(FgRow { degree: p, module_side: x_basis.len(), comodule_side: y.dim() });
        for phi in &x_basis {
            let image = big_phi(phi);
            if y.coordinates(&image).is_none() {
                report.fail("Φ lands in comodule maps", format!("degree {p}"));
                continue;
            }
            if big_psi(&image) != *phi {
                report.fail("ΨΦ = id", format!("degree {p}"));
            }
            let lhs = big_phi(&d_x(p, phi));
            let rhs = hom_differential(n, &cofree, p, &image);
            if lhs != rhs {
                report.fail("Φ is a chain map", format!("degree {p}"));
            }
            if y_next.coordinates(&rhs).is_none() {
                report.fail("differential preserves comodule maps", format!("degree {p}"));
            }
        }
        for psi in &y.basis {
            if big_phi(&big_psi(psi)) != *psi {
                report.fail("ΦΨ = id", format!("degree {p}"));
            }
        }
    }
    Ok(FgCertificate { rows, report })
}
