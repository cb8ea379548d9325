//! Finite formal linear combinations with exact coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use num_traits::Zero;

use crate::scalar::Scalar;

/// A finite rational combination of basis objects; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<B: Ord> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Ord> Default for Chain<B> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> Chain<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        let mut c = Self::zero();
        c.add_term(b, Scalar::from_integer(1.into()));
        c
    }

    pub fn from_terms(it: impl IntoIterator<Item = (B, Scalar)>) -> Self {
        let mut c = Self::zero();
        for (b, q) in it {
            c.add_term(b, q);
        }
        c
    }

    pub fn add_term(&mut self, b: B, q: Scalar) {
        if q.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(v) => {
                *v += q;
                if v.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, q);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain<B>, q: &Scalar) {
        if q.is_zero() {
            return;
        }
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v * q);
        }
    }

    pub fn scaled(&self, q: &Scalar) -> Self {
        let mut c = Self::zero();
        c.add_scaled(self, q);
        c
    }

    pub fn coefficient(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_else(Scalar::zero)
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

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Scalar)> {
        self.terms.iter()
    }

    pub fn basis_elements(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    /// Extends a linear map given on basis elements.
    pub fn map_linear<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> Chain<C>) -> Chain<C> {
        let mut out = Chain::zero();
        for (b, q) in &self.terms {
            out.add_scaled(&f(b), q);
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<(B, Scalar)> for Chain<B> {
    fn from_iter<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<B: Ord + Clone> AddAssign<&Chain<B>> for Chain<B> {
    fn add_assign(&mut self, rhs: &Chain<B>) {
        for (b, v) in &rhs.terms {
            self.add_term(b.clone(), v.clone());
        }
    }
}

impl<B: Ord + Clone> Add<&Chain<B>> for &Chain<B> {
    type Output = Chain<B>;
    fn add(self, rhs: &Chain<B>) -> Chain<B> {
        let mut c = self.clone();
        c += rhs;
        c
    }
}

impl<B: Ord + Clone> Sub<&Chain<B>> for &Chain<B> {
    type Output = Chain<B>;
    fn sub(self, rhs: &Chain<B>) -> Chain<B> {
        let mut c = self.clone();
        c.add_scaled(rhs, &-Scalar::from_integer(1.into()));
        c
    }
}

impl<B: Ord + Clone> Neg for &Chain<B> {
    type Output = Chain<B>;
    fn neg(self) -> Chain<B> {
        self.scaled(&-Scalar::from_integer(1.into()))
    }
}

impl<B: Ord> IntoIterator for Chain<B> {
    type Item = (B, Scalar);
    type IntoIter = std::collections::btree_map::IntoIter<B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}
