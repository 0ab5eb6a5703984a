//! Finitely supported linear combinations with scalar coefficients.

use std::collections::btree_map::{self, BTreeMap};

use crate::scalar::{Scalar, ScalarRing};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lc<K: Ord> {
    terms: BTreeMap<K, Scalar>,
}

impl<K: Ord> Default for Lc<K> {
    fn default() -> Self {
        Lc { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Lc<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn term(key: K, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(key, c);
        out
    }

    pub fn add_term(&mut self, key: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), -c);
        }
    }

    pub fn add_scaled(&mut self, ring: &ScalarRing, other: &Self, c: &Scalar) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), ring.mul(v, c));
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> Self {
        Lc { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }

    pub fn scale(&self, ring: &ScalarRing, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(ring, self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Option<&Scalar> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a key map, merging colliding keys.
    pub fn map_keys<F: FnMut(&K) -> K>(&self, mut f: F) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    pub fn retain<F: FnMut(&K) -> bool>(&self, mut f: F) -> Self {
        Lc { terms: self.terms.iter().filter(|(k, _)| f(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for Lc<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord> IntoIterator for Lc<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}
