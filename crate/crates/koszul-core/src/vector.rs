//! Sparse linear combinations keyed by an ordered basis type.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;

use crate::scalar::Scalar;

/// A finite linear combination `Σ λ_k k`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for Vector<K> {
    fn default() -> Self {
        Vector(BTreeMap::new())
    }
}

impl<K: Ord + Clone> Vector<K> {
    pub fn zero() -> Self {
        Vector(BTreeMap::new())
    }

    pub fn basis(k: K, one: Scalar) -> Self {
        let mut v = Vector::zero();
        v.add_term(k, one);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, k: &K) -> Option<&Scalar> {
        self.0.get(k)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.0.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.0.keys()
    }

    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Vector<K>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add(&mut self, other: &Vector<K>) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Vector<K> {
        if c.is_zero() {
            return Vector::zero();
        }
        Vector(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }

    pub fn neg(&self) -> Vector<K> {
        Vector(self.0.iter().map(|(k, v)| (k.clone(), -v)).collect())
    }

    pub fn sub(&self, other: &Vector<K>) -> Vector<K> {
        let mut r = self.clone();
        for (k, v) in other.iter() {
            r.add_term(k.clone(), -v);
        }
        r
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone, F: FnMut(&K) -> Vector<L>>(&self, mut f: F) -> Vector<L> {
        let mut r = Vector::zero();
        for (k, c) in self.iter() {
            r.add_scaled(&f(k), c);
        }
        r
    }

    /// Relabels keys (must be injective on the support, or coefficients add).
    pub fn map_keys<L: Ord + Clone, F: FnMut(&K) -> L>(&self, mut f: F) -> Vector<L> {
        let mut r = Vector::zero();
        for (k, c) in self.iter() {
            r.add_term(f(k), c.clone());
        }
        r
    }

    pub fn filter<F: FnMut(&K) -> bool>(&self, mut f: F) -> Vector<K> {
        Vector(
            self.0
                .iter()
                .filter(|(k, _)| f(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        )
    }

    pub fn into_pairs(self) -> Vec<(K, Scalar)> {
        self.0.into_iter().collect()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Vector<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut v = Vector::zero();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

impl<'a, K: Ord> IntoIterator for &'a Vector<K> {
    type Item = (&'a K, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}
