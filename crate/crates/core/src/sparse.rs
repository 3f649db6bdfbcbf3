//! Sparse vectors with exact rational coefficients over an ordered key set.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVec<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        Self::term(key, crate::rational::one())
    }

    pub fn term(key: K, c: Q) -> Self {
        let mut v = Self::new();
        v.add_term(key, c);
        v
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

    pub fn add_term(&mut self, key: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &SparseVec<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x * c);
        }
    }

    pub fn add_assign(&mut self, other: &SparseVec<K>) {
        for (k, x) in &other.terms {
            self.add_term(k.clone(), x.clone());
        }
    }

    pub fn scale(&mut self, c: &Q) {
        if c.is_zero() {
            self.terms.clear();
            return;
        }
        for x in self.terms.values_mut() {
            *x *= c;
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn sub(&self, other: &SparseVec<K>) -> Self {
        let mut v = self.clone();
        v.add_scaled(other, &-crate::rational::one());
        v
    }

    pub fn coeff(&self, key: &K) -> Q {
        self.terms.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> SparseVec<L>) -> SparseVec<L> {
        let mut out = SparseVec::new();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    pub fn into_iter_terms(self) -> impl Iterator<Item = (K, Q)> {
        self.terms.into_iter()
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for SparseVec<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut v = SparseVec::new();
        for (k, c) in iter {
            v.add_term(k, c);
        }
        v
    }
}

/// Span of a set of sparse vectors, kept in echelon form keyed by the
/// smallest key of each reduced vector.
#[derive(Clone, Debug)]
pub struct SparseSpan<K: Ord> {
    rows: BTreeMap<K, SparseVec<K>>,
}

impl<K: Ord + Clone> Default for SparseSpan<K> {
    fn default() -> Self {
        SparseSpan { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseSpan<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut r = v.clone();
        loop {
            let hit = r.keys().find(|k| self.rows.contains_key(*k)).cloned();
            let Some(k) = hit else { return r };
            let c = r.coeff(&k);
            r.add_scaled(&self.rows[&k], &-c);
        }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &SparseVec<K>) -> bool {
        let r = self.reduce(v);
        let Some(pivot) = r.keys().next().cloned() else { return false };
        let inv = crate::rational::one() / r.coeff(&pivot);
        let r = r.scaled(&inv);
        for row in self.rows.values_mut() {
            let c = row.coeff(&pivot);
            if !c.is_zero() {
                row.add_scaled(&r, &-c);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    /// Reduced basis, ordered by pivot.
    pub fn basis(&self) -> Vec<SparseVec<K>> {
        self.rows.values().cloned().collect()
    }
}

#[cfg(test)]
mod span_tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn span_membership() {
        let mut s = SparseSpan::new();
        let a: SparseVec<u32> = [(1, q(1)), (2, q(2))].into_iter().collect();
        let b: SparseVec<u32> = [(2, q(1)), (3, q(1))].into_iter().collect();
        assert!(s.insert(&a));
        assert!(s.insert(&b));
        assert!(!s.insert(&a.sub(&b.scaled(&q(3)))));
        assert!(!s.contains(&SparseVec::unit(3)));
        assert_eq!(s.dim(), 2);
    }
}
