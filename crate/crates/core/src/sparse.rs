//! Finite linear combinations over an ordered basis.

use crate::scalar::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

/// A finite linear combination `Σ c_k · k` with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sparse<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for Sparse<K> {
    fn default() -> Self {
        Sparse { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> Sparse<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(key: K, coef: Rational) -> Self {
        let mut s = Self::new();
        s.add_term(key, coef);
        s
    }

    pub fn add_term(&mut self, key: K, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer(1.into()), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&Rational::from_integer((-1).into()), other);
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::new();
        out.add_scaled(c, self);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_integer((-1).into()))
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

    pub fn coef(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    /// Applies a linear map given on basis keys.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Sparse<L>) -> Sparse<L> {
        let mut out = Sparse::new();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k));
        }
        out
    }

    /// Bilinear extension of `f` on pairs of basis keys.
    pub fn bilinear<L: Ord + Clone, M: Ord + Clone>(
        &self,
        other: &Sparse<L>,
        mut f: impl FnMut(&K, &L) -> Sparse<M>,
    ) -> Sparse<M> {
        let mut out = Sparse::new();
        for (k, a) in &self.terms {
            for (l, b) in &other.terms {
                out.add_scaled(&(a * b), &f(k, l));
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Rational)> for Sparse<K> {
    fn from_iter<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut s = Sparse::new();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}
