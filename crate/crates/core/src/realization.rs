//! A realized ring: the algebra plus a lazily built, cached enumeration.

use std::collections::HashMap;
use std::ops::Deref;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::ring::StarRing;

/// Default refusal threshold for finite enumeration.
pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

/// A [`StarRing`] together with everything derived from enumerating it.
///
/// Dereferences to the underlying algebra, so `ring.mul(a, b)` works directly.
#[derive(Debug)]
pub struct Ring<R: StarRing> {
    algebra: R,
    cap: u128,
    finite: OnceLock<FiniteView<R::Elem>>,
}

impl<R: StarRing> Deref for Ring<R> {
    type Target = R;

    fn deref(&self) -> &R {
        &self.algebra
    }
}

impl<R: StarRing> Ring<R> {
    pub fn new(algebra: R) -> Self {
        Self::with_cap(algebra, DEFAULT_ENUM_CAP)
    }

    pub fn with_cap(algebra: R, cap: u128) -> Self {
        Ring { algebra, cap, finite: OnceLock::new() }
    }

    pub fn algebra(&self) -> &R {
        &self.algebra
    }

    pub fn cap(&self) -> u128 {
        self.cap
    }

    /// Finite and within the enumeration cap.
    pub fn is_enumerable(&self) -> bool {
        matches!(self.algebra.cardinality(), Some(n) if n <= self.cap)
    }

    pub fn finite(&self) -> Result<&FiniteView<R::Elem>> {
        match self.algebra.cardinality() {
            None => {
                return Err(Error::Unsupported(format!(
                    "{} is infinite and cannot be enumerated",
                    self.algebra.descriptor()
                )))
            }
            Some(size) if size > self.cap => return Err(Error::EnumerationCap { size, cap: self.cap }),
            Some(_) => {}
        }
        Ok(self.finite.get_or_init(|| FiniteView::new(self.algebra.enumerate())))
    }

    pub fn elements(&self) -> Result<&[R::Elem]> {
        Ok(&self.finite()?.elements)
    }

    pub fn pow(&self, a: &R::Elem, n: u32) -> R::Elem {
        (0..n).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    pub fn is_zero(&self, a: &R::Elem) -> bool {
        *a == self.zero()
    }

    pub fn mul3(&self, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> R::Elem {
        self.mul(&self.mul(a, b), c)
    }

    /// `ab - ba`.
    pub fn commutator(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    pub fn is_hermitian(&self, a: &R::Elem) -> bool {
        self.star(a) == *a
    }

    pub fn is_idempotent(&self, a: &R::Elem) -> bool {
        self.mul(a, a) == *a
    }

    pub fn is_unit(&self, a: &R::Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    /// `1 - a`.
    pub fn complement(&self, a: &R::Elem) -> R::Elem {
        self.sub(&self.one(), a)
    }
}

/// Canonical enumeration of a finite ring plus per-element ideal tables.
///
/// Tables are computed on first use and shared afterwards.
#[derive(Debug)]
pub struct FiniteView<E> {
    elements: Vec<E>,
    index: HashMap<E, usize>,
    right_ideals: OnceLock<Vec<FixedBitSet>>,
    left_ideals: OnceLock<Vec<FixedBitSet>>,
    left_annihilators: OnceLock<Vec<FixedBitSet>>,
    right_annihilators: OnceLock<Vec<FixedBitSet>>,
}

impl<E: Clone + Eq + std::hash::Hash> FiniteView<E> {
    fn new(elements: Vec<E>) -> Self {
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        FiniteView {
            elements,
            index,
            right_ideals: OnceLock::new(),
            left_ideals: OnceLock::new(),
            left_annihilators: OnceLock::new(),
            right_annihilators: OnceLock::new(),
        }
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &E) -> usize {
        *self.index.get(e).expect("element belongs to the enumerated ring")
    }

    pub fn get(&self, i: usize) -> &E {
        &self.elements[i]
    }

    fn table<'a, F>(&'a self, cell: &'a OnceLock<Vec<FixedBitSet>>, build: F) -> &'a [FixedBitSet]
    where
        F: Fn(&E) -> FixedBitSet,
    {
        cell.get_or_init(|| self.elements.iter().map(build).collect())
    }

    fn collect<F: Fn(&E) -> Option<usize>>(&self, f: F) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.len());
        for x in &self.elements {
            if let Some(i) = f(x) {
                set.insert(i);
            }
        }
        set
    }

    /// `aR` as a set of element indices.
    pub fn right_ideal<R: StarRing<Elem = E>>(&self, ring: &R, a: &E) -> &FixedBitSet {
        let i = self.index_of(a);
        &self.table(&self.right_ideals, |g| self.collect(|x| Some(self.index_of(&ring.mul(g, x)))))[i]
    }

    /// `Ra` as a set of element indices.
    pub fn left_ideal<R: StarRing<Elem = E>>(&self, ring: &R, a: &E) -> &FixedBitSet {
        let i = self.index_of(a);
        &self.table(&self.left_ideals, |g| self.collect(|x| Some(self.index_of(&ring.mul(x, g)))))[i]
    }

    /// `{x : xa = 0}`.
    pub fn left_annihilator<R: StarRing<Elem = E>>(&self, ring: &R, a: &E) -> &FixedBitSet {
        let i = self.index_of(a);
        let zero = ring.zero();
        &self.table(&self.left_annihilators, |g| self.collect(|x| (ring.mul(x, g) == zero).then(|| self.index_of(x))))
            [i]
    }

    /// `{x : ax = 0}`.
    pub fn right_annihilator<R: StarRing<Elem = E>>(&self, ring: &R, a: &E) -> &FixedBitSet {
        let i = self.index_of(a);
        let zero = ring.zero();
        &self.table(&self.right_annihilators, |g| self.collect(|x| (ring.mul(g, x) == zero).then(|| self.index_of(x))))
            [i]
    }
}
