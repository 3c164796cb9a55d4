//! Unital rings with involution and their concrete exact realizations.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{self, Matrix};
use crate::scalar::{Modular, Scalars};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Involution {
    Identity,
    Transpose,
    ConjugateTranspose,
}

/// Ring-theoretic flags used by the singleton claims.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primality {
    Prime,
    Semiprime,
    Neither,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        self == Primality::Prime
    }

    pub fn is_semiprime(self) -> bool {
        self != Primality::Neither
    }
}

/// A unital ring with an involution `a -> a*`.
///
/// Implementations are immutable contexts; elements are plain values in
/// canonical form so that `==` is exact ring equality.
pub trait StarRing: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_commutative(&self) -> bool;

    /// Number of elements, `None` when infinite. Saturates at `u128::MAX`.
    fn cardinality(&self) -> Option<u128>;

    /// Every element, lexicographic on the canonical payload.
    fn enumerate(&self) -> Vec<Self::Elem>;

    /// Two-sided inverse when `a` is a unit, decided exactly.
    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn primality(&self) -> Primality;

    /// Field-backed linear algebra, when the realization supports it.
    fn linear(&self) -> Option<&dyn LinearOps<Elem = Self::Elem>> {
        None
    }

    fn parse_element(&self, text: &str) -> Result<Self::Elem>;

    fn render(&self, a: &Self::Elem) -> String;

    /// Canonical ring-spec string, e.g. `Mat:2:GF3`.
    fn descriptor(&self) -> String;
}

/// Linear-algebra view of a matrix ring over a field.
///
/// Subspaces are returned as canonical bases: matrices (not necessarily
/// square) whose rows form the reduced echelon basis of the subspace.
pub trait LinearOps: Send + Sync {
    type Elem;

    fn rank(&self, a: &Self::Elem) -> usize;
    /// Basis of the column space of `a`, i.e. the right ideal `aR`.
    fn column_space(&self, a: &Self::Elem) -> Self::Elem;
    /// Basis of the row space of `a`, i.e. the left ideal `Ra`.
    fn row_space(&self, a: &Self::Elem) -> Self::Elem;
    /// Basis of `{v : v a = 0}`; `x` lies in the left annihilator iff its rows do.
    fn left_null_space(&self, a: &Self::Elem) -> Self::Elem;
    /// Basis of `{v : a v = 0}`; `x` lies in the right annihilator iff its columns do.
    fn right_null_space(&self, a: &Self::Elem) -> Self::Elem;
    fn span_contains(&self, big: &Self::Elem, small: &Self::Elem) -> bool;
    fn dim(&self, basis: &Self::Elem) -> usize;

    fn inner_inverse(&self, a: &Self::Elem) -> Self::Elem;
    fn moore_penrose(&self, a: &Self::Elem) -> Result<Self::Elem, String>;
    fn group_inverse(&self, a: &Self::Elem) -> Result<Self::Elem, String>;
    fn core_inverse(&self, a: &Self::Elem) -> Result<Self::Elem, String>;
}

/// The integers modulo `n` with the identity involution.
#[derive(Clone, Debug)]
pub struct ModularIntegers {
    scalars: Modular,
}

impl ModularIntegers {
    pub fn new(modulus: u64) -> Result<Self> {
        Ok(ModularIntegers { scalars: Modular::new(modulus)? })
    }

    pub fn modulus(&self) -> u64 {
        self.scalars.modulus()
    }
}

impl StarRing for ModularIntegers {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        self.scalars.one()
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.scalars.add(a, b)
    }

    fn neg(&self, a: &u64) -> u64 {
        self.scalars.neg(a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.scalars.mul(a, b)
    }

    fn star(&self, a: &u64) -> u64 {
        *a
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn cardinality(&self) -> Option<u128> {
        self.scalars.cardinality()
    }

    fn enumerate(&self) -> Vec<u64> {
        self.scalars.elements()
    }

    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        self.scalars.inv(a)
    }

    fn primality(&self) -> Primality {
        let n = self.modulus();
        if self.scalars.is_field() {
            Primality::Prime
        } else if is_squarefree(n) {
            Primality::Semiprime
        } else {
            Primality::Neither
        }
    }

    fn parse_element(&self, text: &str) -> Result<u64> {
        self.scalars.parse(text)
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn descriptor(&self) -> String {
        format!("Zmod:{}", self.modulus())
    }
}

fn is_squarefree(n: u64) -> bool {
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `k x k` matrices over a scalar domain.
#[derive(Clone, Debug)]
pub struct MatrixRing<S> {
    dim: usize,
    scalars: S,
    involution: Involution,
}

impl<S: Scalars> MatrixRing<S> {
    /// Validates the involution against the scalar domain and dimension.
    pub fn new(dim: usize, scalars: S, involution: Involution) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("matrix dimension must be at least 1".into()));
        }
        match involution {
            Involution::Identity if dim > 1 => {
                return Err(Error::InvalidSpec(format!(
                    "identity involution is not an anti-automorphism of the noncommutative ring of {dim}x{dim} matrices"
                )))
            }
            Involution::ConjugateTranspose if s_conj_trivial(&scalars) => {
                return Err(Error::InvalidSpec(format!(
                    "conjugate-transpose requires gaussian rationals, not {}",
                    scalars.label()
                )))
            }
            Involution::Transpose if !s_conj_trivial(&scalars) => {
                return Err(Error::InvalidSpec(format!(
                    "{} matrices carry the conjugate-transpose involution",
                    scalars.label()
                )))
            }
            _ => {}
        }
        Ok(MatrixRing { dim, scalars, involution })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn scalars(&self) -> &S {
        &self.scalars
    }

    pub fn involution(&self) -> Involution {
        self.involution
    }

    /// Build a ring element from rows of scalar values.
    pub fn element(&self, rows: Vec<Vec<S::Value>>) -> Result<Matrix<S::Value>> {
        let m = Matrix::from_rows(rows)?;
        self.check_shape(&m)?;
        Ok(m)
    }

    pub fn from_scalar_rows(&self, rows: &[&[i64]]) -> Result<Matrix<S::Value>> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| self.scalars.from_i64(v)).collect()).collect();
        self.element(rows)
    }

    fn check_shape(&self, m: &Matrix<S::Value>) -> Result<()> {
        if m.rows() != self.dim || m.cols() != self.dim {
            return Err(Error::Dimension { expected: self.dim, rows: m.rows(), cols: m.cols() });
        }
        Ok(())
    }
}

fn s_conj_trivial<S: Scalars>(s: &S) -> bool {
    s.conj_is_trivial()
}

impl<S: Scalars> StarRing for MatrixRing<S> {
    type Elem = Matrix<S::Value>;

    fn zero(&self) -> Self::Elem {
        Matrix::zeros(&self.scalars, self.dim, self.dim)
    }

    fn one(&self) -> Self::Elem {
        Matrix::identity(&self.scalars, self.dim)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.add(&self.scalars, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.neg(&self.scalars)
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.sub(&self.scalars, b)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.mul(&self.scalars, b)
    }

    fn star(&self, a: &Self::Elem) -> Self::Elem {
        match self.involution {
            Involution::Identity => a.clone(),
            Involution::Transpose => a.transpose(),
            Involution::ConjugateTranspose => a.star(&self.scalars),
        }
    }

    fn is_commutative(&self) -> bool {
        self.dim == 1
    }

    fn cardinality(&self) -> Option<u128> {
        let q = self.scalars.cardinality()?;
        let entries = (self.dim * self.dim) as u32;
        Some(q.checked_pow(entries).unwrap_or(u128::MAX))
    }

    fn enumerate(&self) -> Vec<Self::Elem> {
        let values = self.scalars.elements();
        if values.is_empty() {
            return Vec::new();
        }
        let n = self.dim * self.dim;
        let total = self.cardinality().unwrap_or(0) as usize;
        let mut digits = vec![0usize; n];
        let mut out = Vec::with_capacity(total);
        loop {
            let data = digits.iter().map(|&d| values[d].clone()).collect();
            out.push(Matrix::from_vec(self.dim, self.dim, data));
            // odometer: the last entry moves fastest, giving lexicographic order
            let mut pos = n;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < values.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if self.scalars.is_field() {
            return linalg::inverse(&self.scalars, a);
        }
        let det = a.determinant(&self.scalars);
        let inv = self.scalars.inv(&det)?;
        Some(a.adjugate(&self.scalars).scale(&self.scalars, &inv))
    }

    fn primality(&self) -> Primality {
        if self.scalars.is_field() {
            return Primality::Prime;
        }
        // M_k(Z_n) is semiprime exactly when Z_n is.
        match self.scalars.cardinality() {
            Some(n) if is_squarefree(n as u64) => Primality::Semiprime,
            _ => Primality::Neither,
        }
    }

    fn linear(&self) -> Option<&dyn LinearOps<Elem = Self::Elem>> {
        if self.scalars.is_field() {
            Some(self)
        } else {
            None
        }
    }

    fn parse_element(&self, text: &str) -> Result<Self::Elem> {
        let m = matrix::parse_literal(&self.scalars, text)?;
        self.check_shape(&m)?;
        Ok(m)
    }

    fn render(&self, a: &Self::Elem) -> String {
        a.render(&self.scalars)
    }

    fn descriptor(&self) -> String {
        format!("Mat:{}:{}", self.dim, self.scalars.label())
    }
}

impl<S: Scalars> LinearOps for MatrixRing<S> {
    type Elem = Matrix<S::Value>;

    fn rank(&self, a: &Self::Elem) -> usize {
        linalg::rank(&self.scalars, a)
    }

    fn column_space(&self, a: &Self::Elem) -> Self::Elem {
        linalg::row_basis(&self.scalars, &a.transpose())
    }

    fn row_space(&self, a: &Self::Elem) -> Self::Elem {
        linalg::row_basis(&self.scalars, a)
    }

    fn left_null_space(&self, a: &Self::Elem) -> Self::Elem {
        linalg::null_basis(&self.scalars, &a.transpose())
    }

    fn right_null_space(&self, a: &Self::Elem) -> Self::Elem {
        linalg::null_basis(&self.scalars, a)
    }

    fn span_contains(&self, big: &Self::Elem, small: &Self::Elem) -> bool {
        linalg::span_contains(&self.scalars, big, small)
    }

    fn dim(&self, basis: &Self::Elem) -> usize {
        basis.rows()
    }

    fn inner_inverse(&self, a: &Self::Elem) -> Self::Elem {
        linalg::inner_inverse(&self.scalars, a)
    }

    fn moore_penrose(&self, a: &Self::Elem) -> Result<Self::Elem, String> {
        if self.involution == Involution::Identity {
            return Err("closed form requires a transpose involution".into());
        }
        linalg::moore_penrose(&self.scalars, a)
    }

    fn group_inverse(&self, a: &Self::Elem) -> Result<Self::Elem, String> {
        linalg::group_inverse(&self.scalars, a)
    }

    fn core_inverse(&self, a: &Self::Elem) -> Result<Self::Elem, String> {
        if self.involution == Involution::Identity {
            return Err("closed form requires a transpose involution".into());
        }
        linalg::core_inverse(&self.scalars, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use num_complex::Complex;
    use num_rational::BigRational;

    #[test]
    fn zmod6_basics() {
        let r = ModularIntegers::new(6).unwrap();
        assert_eq!(r.enumerate().len(), 6);
        assert_eq!(r.star(&5), 5);
        assert_eq!(r.primality(), Primality::Semiprime);
        assert_eq!(ModularIntegers::new(12).unwrap().primality(), Primality::Neither);
        assert_eq!(ModularIntegers::new(7).unwrap().primality(), Primality::Prime);
    }

    #[test]
    fn gf2_matrices_enumerate_in_lex_order() {
        let r = MatrixRing::new(2, Modular::new(2).unwrap(), Involution::Transpose).unwrap();
        let all = r.enumerate();
        assert_eq!(all.len(), 16);
        assert_eq!(all[0], r.zero());
        assert_eq!(all[1], r.from_scalar_rows(&[&[0, 0], &[0, 1]]).unwrap());
        assert_eq!(all[15], r.from_scalar_rows(&[&[1, 1], &[1, 1]]).unwrap());
    }

    #[test]
    fn invalid_involutions_rejected() {
        let q = Exact::<BigRational>::new();
        assert!(MatrixRing::new(2, q.clone(), Involution::Identity).is_err());
        assert!(MatrixRing::new(2, q.clone(), Involution::ConjugateTranspose).is_err());
        assert!(MatrixRing::new(1, q, Involution::Identity).is_ok());
        let qi = Exact::<Complex<BigRational>>::new();
        assert!(MatrixRing::new(2, qi, Involution::Transpose).is_err());
    }

    #[test]
    fn units_over_zmod4_use_the_adjugate() {
        let r = MatrixRing::new(2, Modular::new(4).unwrap(), Involution::Transpose).unwrap();
        let a = r.from_scalar_rows(&[&[1, 2], &[3, 3]]).unwrap();
        // det = 3 - 6 = -3 = 1 mod 4
        let inv = r.unit_inverse(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), r.one());
        let b = r.from_scalar_rows(&[&[2, 0], &[0, 1]]).unwrap();
        assert!(r.unit_inverse(&b).is_none());
        assert!(r.linear().is_none());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let r = MatrixRing::new(2, Exact::<BigRational>::new(), Involution::Transpose).unwrap();
        let err = r.parse_element("[[1,2,3],[4,5,6]]").unwrap_err();
        assert_eq!(err, Error::Dimension { expected: 2, rows: 2, cols: 3 });
    }
}
