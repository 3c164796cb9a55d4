use crate::realization::Ring;
use crate::ring::StarRing;

/// Structural flags of a single element, with invertibility witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification<E> {
    pub hermitian: bool,
    pub idempotent: bool,
    /// Hermitian idempotent.
    pub projection: bool,
    pub unit: bool,
    pub left_invertible: bool,
    pub right_invertible: bool,
    pub inverse: Option<E>,
    /// Some `x` with `xa = 1`.
    pub left_witness: Option<E>,
    /// Some `x` with `ax = 1`.
    pub right_witness: Option<E>,
}

/// Enumerable rings are searched exhaustively for one-sided inverses; other
/// realizations are square matrices over a field, where one-sided and
/// two-sided invertibility coincide and the exact unit test decides all three.
pub fn classify<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Classification<R::Elem> {
    let hermitian = ring.is_hermitian(a);
    let idempotent = ring.is_idempotent(a);
    let one = ring.one();
    let (left_witness, right_witness) = match ring.elements() {
        Ok(all) => {
            (all.iter().find(|x| ring.mul(x, a) == one).cloned(), all.iter().find(|x| ring.mul(a, x) == one).cloned())
        }
        Err(_) => {
            let inv = ring.unit_inverse(a);
            (inv.clone(), inv)
        }
    };
    let inverse = match (&left_witness, &right_witness) {
        (Some(l), Some(_)) => Some(l.clone()),
        _ => None,
    };
    Classification {
        hermitian,
        idempotent,
        projection: hermitian && idempotent,
        unit: inverse.is_some(),
        left_invertible: left_witness.is_some(),
        right_invertible: right_witness.is_some(),
        inverse,
        left_witness,
        right_witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Involution, MatrixRing, ModularIntegers};
    use crate::scalar::Exact;
    use num_rational::BigRational;

    #[test]
    fn projection_that_is_not_a_unit() {
        let alg = MatrixRing::new(2, Exact::<BigRational>::new(), Involution::Transpose).unwrap();
        let ring = Ring::new(alg);
        let p = ring.from_scalar_rows(&[&[1, 0], &[0, 0]]).unwrap();
        let c = classify(&ring, &p);
        assert!(c.projection && !c.unit && !c.left_invertible);
        let one = classify(&ring, &ring.one());
        assert!(one.projection && one.unit);
        assert_eq!(one.inverse, Some(ring.one()));
    }

    #[test]
    fn two_in_zmod6() {
        let ring = Ring::new(ModularIntegers::new(6).unwrap());
        let c = classify(&ring, &2);
        assert!(c.hermitian && !c.idempotent && !c.unit);
        let c = classify(&ring, &5);
        assert_eq!(c.inverse, Some(5));
    }
}
