//! Labeled graded spaces, sparse maps, exact elimination, homology.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

/// Reduced row echelon form of a sparse matrix, pivots chosen column by column.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub ncols: usize,
    /// `(pivot column, row)`; each row has coefficient 1 at its pivot and 0 at every other pivot.
    pub rows: Vec<(usize, Vector<usize>)>,
}

impl Echelon {
    pub fn new(field: Field, ncols: usize, rows: Vec<Vector<usize>>) -> Echelon {
        let mut rows: Vec<Vector<usize>> = rows.into_iter().filter(|r| !r.is_zero()).collect();
        let mut done: Vec<(usize, Vector<usize>)> = Vec::new();
        let mut col_of_interest: Vec<usize> = rows.iter().flat_map(|r| r.keys().copied()).collect();
        col_of_interest.sort_unstable();
        col_of_interest.dedup();
        for col in col_of_interest {
            let pos = rows.iter().position(|r| r.get(&col).is_some());
            let Some(pos) = pos else { continue };
            let row = rows.remove(pos);
            let inv = row.get(&col).unwrap().inverse().unwrap();
            let row = row.scaled(&inv);
            for r in rows.iter_mut() {
                if let Some(c) = r.get(&col).cloned() {
                    r.add_scaled(&row, &-&c);
                }
            }
            for (_, r) in done.iter_mut() {
                if let Some(c) = r.get(&col).cloned() {
                    r.add_scaled(&row, &-&c);
                }
            }
            rows.retain(|r| !r.is_zero());
            done.push((col, row));
        }
        let _ = field;
        Echelon { ncols, rows: done }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    /// Basis of the null space, one vector per free column in increasing order.
    pub fn kernel(&self, field: Field) -> Vec<Vector<usize>> {
        let pivots: BTreeMap<usize, usize> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, (p, _))| (*p, i))
            .collect();
        let mut out = Vec::new();
        for j in 0..self.ncols {
            if pivots.contains_key(&j) {
                continue;
            }
            let mut v = Vector::basis(j, field.one());
            for (p, row) in &self.rows {
                if let Some(c) = row.get(&j) {
                    v.add_term(*p, -c);
                }
            }
            out.push(v);
        }
        out
    }

    /// Remainder of `v` after subtracting its row-space component along pivots.
    pub fn reduce(&self, v: &Vector<usize>) -> Vector<usize> {
        let mut r = v.clone();
        for (p, row) in &self.rows {
            if let Some(c) = r.get(p).cloned() {
                r.add_scaled(row, &-&c);
            }
        }
        r
    }
}

/// Finite list of `(label, degree)` with distinct labels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedSpace {
    labels: Vec<String>,
    degrees: Vec<i32>,
    index: BTreeMap<String, usize>,
}

impl GradedSpace {
    pub fn new<S: Into<String>>(basis: Vec<(S, i32)>) -> Result<GradedSpace, Error> {
        let mut g = GradedSpace::default();
        for (l, d) in basis {
            g.push(l.into(), d)?;
        }
        Ok(g)
    }

    pub fn push(&mut self, label: String, degree: i32) -> Result<usize, Error> {
        if self.index.contains_key(&label) {
            return Err(Error::DuplicateLabel(label));
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        self.degrees.push(degree);
        Ok(i)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Indices in degree `n`, sorted by label.
    pub fn in_degree(&self, n: i32) -> Vec<usize> {
        self.index
            .values()
            .copied()
            .filter(|&i| self.degrees[i] == n)
            .collect()
    }

    pub fn degrees(&self) -> Vec<i32> {
        let mut d = self.degrees.clone();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn dim_in_degree(&self, n: i32) -> usize {
        self.degrees.iter().filter(|&&d| d == n).count()
    }

    /// Basis `x⊗y`, outer index over `self`.
    pub fn tensor(&self, other: &GradedSpace) -> Result<GradedSpace, Error> {
        let mut g = GradedSpace::default();
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                g.push(
                    format!("{}⊗{}", self.labels[i], other.labels[j]),
                    self.degrees[i] + other.degrees[j],
                )?;
            }
        }
        Ok(g)
    }
}

/// Sparse map between graded spaces, homogeneous of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub field: Field,
    pub source: GradedSpace,
    pub target: GradedSpace,
    pub degree: i32,
    columns: Vec<Vector<usize>>,
}

impl LinearMap {
    pub fn zero(field: Field, source: GradedSpace, target: GradedSpace, degree: i32) -> LinearMap {
        let n = source.dim();
        LinearMap {
            field,
            source,
            target,
            degree,
            columns: (0..n).map(|_| Vector::zero()).collect(),
        }
    }

    pub fn identity(field: Field, space: GradedSpace) -> LinearMap {
        let columns = (0..space.dim()).map(|i| Vector::basis(i, field.one())).collect();
        LinearMap {
            field,
            source: space.clone(),
            target: space,
            degree: 0,
            columns,
        }
    }

    /// Builds a map from labeled entries, rejecting degree violations and unknown labels.
    pub fn from_entries(
        field: Field,
        source: GradedSpace,
        target: GradedSpace,
        degree: i32,
        entries: &[(&str, &str, Scalar)],
    ) -> Result<LinearMap, Error> {
        let mut m = LinearMap::zero(field, source, target, degree);
        for (s, t, c) in entries {
            let i = m
                .source
                .index_of(s)
                .ok_or_else(|| Error::UnknownLabel((*s).into()))?;
            let j = m
                .target
                .index_of(t)
                .ok_or_else(|| Error::UnknownLabel((*t).into()))?;
            m.set_entry(i, j, c.clone())?;
        }
        Ok(m)
    }

    pub fn from_columns(
        field: Field,
        source: GradedSpace,
        target: GradedSpace,
        degree: i32,
        columns: Vec<Vector<usize>>,
    ) -> Result<LinearMap, Error> {
        if columns.len() != source.dim() {
            return Err(Error::IllFormed("column count".into()));
        }
        for (i, col) in columns.iter().enumerate() {
            for (j, c) in col {
                if *j >= target.dim() {
                    return Err(Error::IllFormed("target index out of range".into()));
                }
                if c.field() != field {
                    return Err(Error::FieldMismatch {
                        left: field,
                        right: c.field(),
                    });
                }
                if target.degree(*j) != source.degree(i) + degree {
                    return Err(Error::DegreeMismatch(format!(
                        "{} -> {}",
                        source.label(i),
                        target.label(*j)
                    )));
                }
            }
        }
        Ok(LinearMap {
            field,
            source,
            target,
            degree,
            columns,
        })
    }

    /// Adds `c` to the entry `source i -> target j`.
    pub fn set_entry(&mut self, i: usize, j: usize, c: Scalar) -> Result<(), Error> {
        if self.target.degree(j) != self.source.degree(i) + self.degree {
            return Err(Error::DegreeMismatch(format!(
                "{} -> {}",
                self.source.label(i),
                self.target.label(j)
            )));
        }
        self.columns[i].add_term(j, c);
        Ok(())
    }

    pub fn column(&self, i: usize) -> &Vector<usize> {
        &self.columns[i]
    }

    pub fn apply(&self, v: &Vector<usize>) -> Vector<usize> {
        v.map_linear(|i| self.columns[*i].clone())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> Result<LinearMap, Error> {
        if other.target != self.source {
            return Err(Error::Mismatch("composition of incompatible maps".into()));
        }
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        LinearMap::from_columns(
            self.field,
            other.source.clone(),
            self.target.clone(),
            self.degree + other.degree,
            columns,
        )
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    fn check_fields(&self) -> Result<(), Error> {
        for col in &self.columns {
            for (_, c) in col {
                if c.field() != self.field {
                    return Err(Error::FieldMismatch {
                        left: self.field,
                        right: c.field(),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Kernel basis (over source indices) and rank of a map restricted to one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelRank {
    pub kernel: Vec<Vector<usize>>,
    pub rank: usize,
}

/// Exact kernel and rank of `m` on its degree-`degree` part.
///
/// Columns are ordered by source label; the kernel vectors are the
/// reduced-echelon null basis, one per non-pivot column.
pub fn kernel_and_rank(m: &LinearMap, degree: i32) -> Result<KernelRank, Error> {
    m.check_fields()?;
    let cols = m.source.in_degree(degree);
    let rows_idx = m.target.in_degree(degree + m.degree);
    let row_pos: BTreeMap<usize, usize> = rows_idx.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let mut rows: Vec<Vector<usize>> = (0..rows_idx.len()).map(|_| Vector::zero()).collect();
    for (cpos, &i) in cols.iter().enumerate() {
        for (j, c) in m.column(i) {
            rows[row_pos[j]].add_term(cpos, c.clone());
        }
    }
    let ech = Echelon::new(m.field, cols.len(), rows);
    let kernel = ech
        .kernel(m.field)
        .into_iter()
        .map(|v| v.map_keys(|p| cols[*p]))
        .collect();
    Ok(KernelRank {
        kernel,
        rank: ech.rank(),
    })
}

/// A dg vector space with finitely many basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    pub field: Field,
    pub space: GradedSpace,
    pub d: LinearMap,
}

impl FiniteComplex {
    pub fn new(field: Field, space: GradedSpace, d: LinearMap) -> Result<FiniteComplex, Error> {
        if d.degree != 1 || d.source != space || d.target != space {
            return Err(Error::IllFormed("differential must be a degree +1 endomorphism".into()));
        }
        d.check_fields()?;
        let mut order: Vec<usize> = (0..space.dim()).collect();
        order.sort_by(|a, b| space.label(*a).cmp(space.label(*b)));
        for i in order {
            if !d.apply(d.column(i)).is_zero() {
                return Err(Error::NotAComplex {
                    witness: space.label(i).into(),
                });
            }
        }
        Ok(FiniteComplex { field, space, d })
    }

    /// Builds a complex whose differential is given per basis index.
    pub fn from_columns(
        field: Field,
        space: GradedSpace,
        columns: Vec<Vector<usize>>,
    ) -> Result<FiniteComplex, Error> {
        let d = LinearMap::from_columns(field, space.clone(), space.clone(), 1, columns)?;
        FiniteComplex::new(field, space, d)
    }
}

/// `H^n = dim ker d^n − rank d^{n−1}` for every degree carrying basis elements.
pub fn homology_dims(c: &FiniteComplex) -> Result<BTreeMap<i32, usize>, Error> {
    let mut out = BTreeMap::new();
    for n in c.space.degrees() {
        let here = kernel_and_rank(&c.d, n)?;
        let below = kernel_and_rank(&c.d, n - 1)?;
        out.insert(n, here.kernel.len() - below.rank);
    }
    Ok(out)
}

/// `(f⊗g)(x⊗y) = (−1)^{|g||x|} f(x)⊗g(y)`.
pub fn koszul_tensor(f: &LinearMap, g: &LinearMap) -> Result<LinearMap, Error> {
    if f.field != g.field {
        return Err(Error::FieldMismatch {
            left: f.field,
            right: g.field,
        });
    }
    let field = f.field;
    let source = f.source.tensor(&g.source)?;
    let target = f.target.tensor(&g.target)?;
    let gd = g.target.dim();
    let mut columns = Vec::with_capacity(source.dim());
    for x in 0..f.source.dim() {
        let sign = field.sign(g.degree as i64 * f.source.degree(x) as i64);
        for y in 0..g.source.dim() {
            let mut col = Vector::zero();
            for (fx, a) in f.column(x) {
                for (gy, b) in g.column(y) {
                    col.add_term(fx * gd + gy, &(a * b) * &sign);
                }
            }
            columns.push(col);
        }
    }
    LinearMap::from_columns(field, source, target, f.degree + g.degree, columns)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(b: &[(&str, i32)]) -> GradedSpace {
        GradedSpace::new(b.iter().map(|(l, d)| (*l, *d)).collect()).unwrap()
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let s = sp(&[("x", 0), ("y", 0)]);
        let m = LinearMap::zero(Field::Rational, s.clone(), s, 0);
        let kr = kernel_and_rank(&m, 0).unwrap();
        assert_eq!((kr.kernel.len(), kr.rank), (2, 0));
    }

    #[test]
    fn identity_has_full_rank() {
        let s = sp(&[("a", 0), ("b", 0), ("c", 0)]);
        let m = LinearMap::identity(Field::Rational, s);
        let kr = kernel_and_rank(&m, 0).unwrap();
        assert_eq!((kr.kernel.len(), kr.rank), (0, 3));
    }

    #[test]
    fn f2_sum_map_kernel() {
        let f = Field::prime(2).unwrap();
        let s = sp(&[("x", 0), ("y", 0)]);
        let one = f.one();
        let m = LinearMap::from_entries(
            f,
            s.clone(),
            s,
            0,
            &[
                ("x", "x", one.clone()),
                ("x", "y", one.clone()),
                ("y", "x", one.clone()),
                ("y", "y", one.clone()),
            ],
        )
        .unwrap();
        let kr = kernel_and_rank(&m, 0).unwrap();
        assert_eq!(kr.rank, 1);
        assert_eq!(kr.kernel.len(), 1);
        let v = &kr.kernel[0];
        assert_eq!(v.get(&0), Some(&one));
        assert_eq!(v.get(&1), Some(&one));
    }

    #[test]
    fn degree_violation_rejected() {
        let s = sp(&[("x", 0), ("y", 1)]);
        let r = LinearMap::from_entries(
            Field::Rational,
            s.clone(),
            s,
            1,
            &[("x", "x", Field::Rational.one())],
        );
        assert!(matches!(r, Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn mixed_field_entries_rejected() {
        let s = sp(&[("x", 0)]);
        let mut m = LinearMap::zero(Field::Rational, s.clone(), s, 0);
        m.set_entry(0, 0, Field::prime(3).unwrap().one()).unwrap();
        assert!(matches!(
            kernel_and_rank(&m, 0),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn homology_point_and_cone() {
        let q = Field::Rational;
        let pt = FiniteComplex::from_columns(q, sp(&[("v", 0)]), alloc::vec![Vector::zero()]).unwrap();
        assert_eq!(homology_dims(&pt).unwrap()[&0], 1);

        let s = sp(&[("a", 0), ("b", 1)]);
        let cone =
            FiniteComplex::from_columns(q, s, alloc::vec![Vector::basis(1, q.one()), Vector::zero()])
                .unwrap();
        assert!(homology_dims(&cone).unwrap().values().all(|&h| h == 0));
    }

    #[test]
    fn chains_of_interval() {
        let q = Field::Rational;
        let s = sp(&[("v0", 0), ("v1", 0), ("e", -1)]);
        let mut de = Vector::basis(1, q.one());
        de.add_term(0, q.int(-1));
        let c = FiniteComplex::from_columns(q, s, alloc::vec![Vector::zero(), Vector::zero(), de]).unwrap();
        let h = homology_dims(&c).unwrap();
        assert_eq!(h[&0], 1);
        assert_eq!(h[&-1], 0);
    }

    #[test]
    fn non_complex_rejected_with_witness() {
        let q = Field::Rational;
        let s = sp(&[("a", 0), ("b", 1), ("c", 2)]);
        let r = FiniteComplex::from_columns(
            q,
            s,
            alloc::vec![Vector::basis(1, q.one()), Vector::basis(2, q.one()), Vector::zero()],
        );
        assert_eq!(r, Err(Error::NotAComplex { witness: "a".into() }));
    }

    #[test]
    fn koszul_sign_once() {
        let q = Field::Rational;
        let x = sp(&[("x", 1)]);
        let y = sp(&[("y", 0), ("dy", 1)]);
        let id = LinearMap::identity(q, x);
        let d = LinearMap::from_entries(q, y.clone(), y, 1, &[("y", "dy", q.one())]).unwrap();
        let t = koszul_tensor(&id, &d).unwrap();
        let i = t.source.index_of("x⊗y").unwrap();
        let j = t.target.index_of("x⊗dy").unwrap();
        assert_eq!(t.column(i).get(&j), Some(&q.int(-1)));
    }

    #[test]
    fn identity_tensor_identity() {
        let q = Field::Rational;
        let a = sp(&[("p", 1), ("q", -2)]);
        let b = sp(&[("r", 3)]);
        let t = koszul_tensor(&LinearMap::identity(q, a.clone()), &LinearMap::identity(q, b.clone()))
            .unwrap();
        assert_eq!(t, LinearMap::identity(q, a.tensor(&b).unwrap()));
    }
}
