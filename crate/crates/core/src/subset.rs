//! Principal ideals and annihilators: `aR`, `Ra`, `°a`, `a°`.
//!
//! Finite rings realize them as explicit element sets; matrix rings over a
//! field realize them as subspaces, because `x ∈ aR` iff every column of `x`
//! lies in the column space of `a` (and dually for the others).

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::realization::Ring;
use crate::ring::StarRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsetKind {
    /// `aR = {ax}`
    RightIdeal,
    /// `Ra = {xa}`
    LeftIdeal,
    /// `°a = {x : xa = 0}`
    LeftAnnihilator,
    /// `a° = {x : ax = 0}`
    RightAnnihilator,
}

impl SubsetKind {
    /// Right-type subsets are right ideals (closed under `x -> xr`).
    pub fn is_right_type(self) -> bool {
        matches!(self, SubsetKind::RightIdeal | SubsetKind::RightAnnihilator)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            SubsetKind::RightIdeal => "aR",
            SubsetKind::LeftIdeal => "Ra",
            SubsetKind::LeftAnnihilator => "°a",
            SubsetKind::RightAnnihilator => "a°",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Realization<E> {
    /// Member indices in the canonical enumeration.
    Listed(FixedBitSet),
    /// Canonical subspace basis (rows of the returned matrix). Right-type
    /// kinds constrain columns of members, left-type kinds constrain rows.
    Span(E),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetHandle<E> {
    pub kind: SubsetKind,
    pub generator: E,
    pub realization: Realization<E>,
}

impl<E: Clone + Eq + std::hash::Hash> SubsetHandle<E> {
    /// Explicit members, for listed realizations.
    pub fn members<R: StarRing<Elem = E>>(&self, ring: &Ring<R>) -> Option<Vec<E>> {
        match &self.realization {
            Realization::Listed(set) => {
                let view = ring.finite().ok()?;
                Some(set.ones().map(|i| view.get(i).clone()).collect())
            }
            Realization::Span(_) => None,
        }
    }
}

/// Listed when the ring is enumerable, otherwise a subspace basis.
pub fn subset_handle<R: StarRing>(ring: &Ring<R>, kind: SubsetKind, a: &R::Elem) -> Result<SubsetHandle<R::Elem>> {
    if ring.is_enumerable() {
        subset_handle_listed(ring, kind, a)
    } else {
        subset_handle_span(ring, kind, a)
    }
}

pub fn subset_handle_listed<R: StarRing>(
    ring: &Ring<R>,
    kind: SubsetKind,
    a: &R::Elem,
) -> Result<SubsetHandle<R::Elem>> {
    let set = listed(ring, kind, a)?.clone();
    Ok(SubsetHandle { kind, generator: a.clone(), realization: Realization::Listed(set) })
}

pub fn subset_handle_span<R: StarRing>(ring: &Ring<R>, kind: SubsetKind, a: &R::Elem) -> Result<SubsetHandle<R::Elem>> {
    let basis = span(ring, kind, a)?;
    Ok(SubsetHandle { kind, generator: a.clone(), realization: Realization::Span(basis) })
}

pub fn subset_included<E: Clone, R: StarRing<Elem = E>>(
    ring: &Ring<R>,
    s: &SubsetHandle<E>,
    t: &SubsetHandle<E>,
) -> Result<bool> {
    if s.kind.is_right_type() != t.kind.is_right_type() {
        return Err(Error::Incompatible(format!(
            "{} is {}-type but {} is {}-type",
            s.kind.symbol(),
            side_name(s.kind),
            t.kind.symbol(),
            side_name(t.kind)
        )));
    }
    match (&s.realization, &t.realization) {
        (Realization::Listed(x), Realization::Listed(y)) => Ok(x.is_subset(y)),
        (Realization::Span(x), Realization::Span(y)) => {
            let lin = ring.linear().ok_or_else(no_linear)?;
            Ok(lin.span_contains(y, x))
        }
        _ => Err(Error::Incompatible("listed and subspace realizations cannot be compared".into())),
    }
}

fn side_name(k: SubsetKind) -> &'static str {
    if k.is_right_type() {
        "right"
    } else {
        "left"
    }
}

fn no_linear() -> Error {
    Error::Unsupported("subspace realization needs a matrix ring over a field".into())
}

fn listed<'r, R: StarRing>(ring: &'r Ring<R>, kind: SubsetKind, a: &R::Elem) -> Result<&'r FixedBitSet> {
    let view = ring.finite()?;
    let alg = ring.algebra();
    Ok(match kind {
        SubsetKind::RightIdeal => view.right_ideal(alg, a),
        SubsetKind::LeftIdeal => view.left_ideal(alg, a),
        SubsetKind::LeftAnnihilator => view.left_annihilator(alg, a),
        SubsetKind::RightAnnihilator => view.right_annihilator(alg, a),
    })
}

fn span<R: StarRing>(ring: &Ring<R>, kind: SubsetKind, a: &R::Elem) -> Result<R::Elem> {
    let lin = ring.linear().ok_or_else(no_linear)?;
    Ok(match kind {
        SubsetKind::RightIdeal => lin.column_space(a),
        SubsetKind::LeftIdeal => lin.row_space(a),
        SubsetKind::LeftAnnihilator => lin.left_null_space(a),
        SubsetKind::RightAnnihilator => lin.right_null_space(a),
    })
}

/// `S(a) ⊆ T(b)` using whichever realization the ring supports, preferring
/// exhaustive listing. Does not build handles, so nothing is cloned.
pub fn included<R: StarRing>(ring: &Ring<R>, s: SubsetKind, a: &R::Elem, t: SubsetKind, b: &R::Elem) -> Result<bool> {
    if s.is_right_type() != t.is_right_type() {
        return Err(Error::Incompatible(format!("{} vs {}", s.symbol(), t.symbol())));
    }
    if ring.is_enumerable() {
        Ok(listed(ring, s, a)?.is_subset(listed(ring, t, b)?))
    } else {
        let lin = ring.linear().ok_or_else(no_linear)?;
        Ok(lin.span_contains(&span(ring, t, b)?, &span(ring, s, a)?))
    }
}

/// `S(a) = T(b)`.
pub fn equal<R: StarRing>(ring: &Ring<R>, s: SubsetKind, a: &R::Elem, t: SubsetKind, b: &R::Elem) -> Result<bool> {
    if s.is_right_type() != t.is_right_type() {
        return Err(Error::Incompatible(format!("{} vs {}", s.symbol(), t.symbol())));
    }
    if ring.is_enumerable() {
        Ok(listed(ring, s, a)? == listed(ring, t, b)?)
    } else {
        Ok(included(ring, s, a, t, b)? && included(ring, t, b, s, a)?)
    }
}
