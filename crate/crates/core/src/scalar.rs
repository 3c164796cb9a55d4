//! Exact scalar domains used as matrix entries and as the modular integers.
//!
//! A [`Scalars`] value is a context object: it carries whatever runtime
//! parameters the domain needs (a modulus, say) and performs arithmetic on
//! plain values. The exact fields are backed by `num` types through the
//! [`ExactScalar`] bridge, so `Exact<BigRational>` and
//! `Exact<Complex<BigRational>>` share one implementation.

use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arithmetic context for a commutative scalar domain with an involution.
pub trait Scalars: Clone + Debug + Send + Sync {
    type Value: Clone + Eq + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Value;
    fn one(&self) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;

    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.add(a, &self.neg(b))
    }

    /// Scalar involution (complex conjugation, or the identity).
    fn conj(&self, a: &Self::Value) -> Self::Value;

    /// Multiplicative inverse when `a` is a unit.
    fn inv(&self, a: &Self::Value) -> Option<Self::Value>;

    fn is_zero(&self, a: &Self::Value) -> bool {
        *a == self.zero()
    }

    fn is_field(&self) -> bool;

    /// True when `conj` is the identity map.
    fn conj_is_trivial(&self) -> bool;

    /// Number of elements, `None` when infinite.
    fn cardinality(&self) -> Option<u128>;

    /// All values in canonical order. Only meaningful for finite domains.
    fn elements(&self) -> Vec<Self::Value>;

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Value;

    fn parse(&self, text: &str) -> Result<Self::Value>;

    fn render(&self, a: &Self::Value) -> String;

    /// Short label used in ring descriptors, e.g. `Q` or `GF3`.
    fn label(&self) -> String;
}

/// Bridge from an exact `num` type to [`Scalars`].
pub trait ExactScalar: num_traits::Num + Clone + Eq + Hash + Debug + Send + Sync + 'static {
    const LABEL: &'static str;
    const CONJ_TRIVIAL: bool;

    fn conjugate(&self) -> Self;
    fn parse_exact(text: &str) -> Option<Self>;
    fn render_exact(&self) -> String;
    fn from_integer(n: i64) -> Self;
}

impl ExactScalar for BigRational {
    const LABEL: &'static str = "Q";
    const CONJ_TRIVIAL: bool = true;

    fn conjugate(&self) -> Self {
        self.clone()
    }

    fn parse_exact(text: &str) -> Option<Self> {
        parse_rational(text)
    }

    fn render_exact(&self) -> String {
        self.to_string()
    }

    fn from_integer(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl ExactScalar for Complex<BigRational> {
    const LABEL: &'static str = "Qi";
    const CONJ_TRIVIAL: bool = false;

    fn conjugate(&self) -> Self {
        self.conj()
    }

    fn parse_exact(text: &str) -> Option<Self> {
        parse_gaussian(text)
    }

    fn render_exact(&self) -> String {
        render_gaussian(self)
    }

    fn from_integer(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }
}

fn parse_rational(text: &str) -> Option<BigRational> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let t = t.strip_prefix('+').unwrap_or(&t);
    // `Ratio::from_str` rejects zero denominators and keeps lowest terms.
    BigRational::from_str(t).ok()
}

fn parse_gaussian(text: &str) -> Option<Complex<BigRational>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    if !t.ends_with('i') {
        return parse_rational(&t).map(|re| Complex::new(re, BigRational::zero()));
    }
    let split = t.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
    let (re, im) = match split {
        Some(i) => (parse_rational(&t[..i])?, &t[i..]),
        None => (BigRational::zero(), t.as_str()),
    };
    let body = im.strip_suffix('i')?;
    let body = body.strip_suffix('*').unwrap_or(body);
    let im = match body {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other)?,
    };
    Some(Complex::new(re, im))
}

fn render_gaussian(z: &Complex<BigRational>) -> String {
    let imag = |v: &BigRational| -> String {
        if v.is_one() {
            "i".to_string()
        } else if *v == -BigRational::one() {
            "-i".to_string()
        } else {
            format!("{v}*i")
        }
    };
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => imag(&z.im),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            let mag = imag(&z.im.abs());
            format!("{}{}{}", z.re, sign, mag)
        }
    }
}

/// Exact field of characteristic zero backed by a `num` type.
#[derive(Clone, Debug, Default)]
pub struct Exact<T>(PhantomData<fn() -> T>);

impl<T> Exact<T> {
    pub fn new() -> Self {
        Exact(PhantomData)
    }
}

impl<T: ExactScalar> Scalars for Exact<T> {
    type Value = T;

    fn zero(&self) -> T {
        T::zero()
    }

    fn one(&self) -> T {
        T::one()
    }

    fn add(&self, a: &T, b: &T) -> T {
        a.clone() + b.clone()
    }

    fn neg(&self, a: &T) -> T {
        T::zero() - a.clone()
    }

    fn sub(&self, a: &T, b: &T) -> T {
        a.clone() - b.clone()
    }

    fn mul(&self, a: &T, b: &T) -> T {
        a.clone() * b.clone()
    }

    fn conj(&self, a: &T) -> T {
        a.conjugate()
    }

    fn inv(&self, a: &T) -> Option<T> {
        if a.is_zero() {
            None
        } else {
            Some(T::one() / a.clone())
        }
    }

    fn is_zero(&self, a: &T) -> bool {
        a.is_zero()
    }

    fn is_field(&self) -> bool {
        true
    }

    fn conj_is_trivial(&self) -> bool {
        T::CONJ_TRIVIAL
    }

    fn cardinality(&self) -> Option<u128> {
        None
    }

    fn elements(&self) -> Vec<T> {
        Vec::new()
    }

    fn from_i64(&self, n: i64) -> T {
        T::from_integer(n)
    }

    fn parse(&self, text: &str) -> Result<T> {
        T::parse_exact(text).ok_or_else(|| Error::Parse(format!("`{text}` is not a valid {} scalar", T::LABEL)))
    }

    fn render(&self, a: &T) -> String {
        a.render_exact()
    }

    fn label(&self) -> String {
        T::LABEL.to_string()
    }
}

/// Integers modulo `n`, residues kept in `[0, n)`.
///
/// With `n` prime this is the prime field `GF(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Modular {
    modulus: u64,
    prime: bool,
}

impl Modular {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSpec(format!("modulus must be at least 2, got {modulus}")));
        }
        Ok(Modular { modulus, prime: is_prime(modulus) })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn reduce(&self, v: i128) -> u64 {
        v.rem_euclid(self.modulus as i128) as u64
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Scalars for Modular {
    type Value = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        (self.modulus - a % self.modulus) % self.modulus
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn conj(&self, a: &u64) -> u64 {
        *a
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        let e = (*a as i128).extended_gcd(&(self.modulus as i128));
        if e.gcd == 1 {
            Some(self.reduce(e.x))
        } else {
            None
        }
    }

    fn is_field(&self) -> bool {
        self.prime
    }

    fn conj_is_trivial(&self) -> bool {
        true
    }

    fn cardinality(&self) -> Option<u128> {
        Some(self.modulus as u128)
    }

    fn elements(&self) -> Vec<u64> {
        (0..self.modulus).collect()
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.reduce(n as i128)
    }

    fn parse(&self, text: &str) -> Result<u64> {
        let t = text.trim();
        t.parse::<i128>()
            .map(|v| self.reduce(v))
            .map_err(|_| Error::Parse(format!("`{text}` is not an integer residue")))
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }

    fn label(&self) -> String {
        if self.prime {
            format!("GF{}", self.modulus)
        } else {
            format!("Zmod{}", self.modulus)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rationals_parse_to_lowest_terms() {
        let s = Exact::<BigRational>::new();
        assert_eq!(s.parse("2/4").unwrap(), q(1, 2));
        assert_eq!(s.parse(" -3 ").unwrap(), q(-3, 1));
        assert!(s.parse("1/0").is_err());
        assert!(s.parse("x").is_err());
    }

    #[test]
    fn gaussian_forms_round_trip() {
        let s = Exact::<Complex<BigRational>>::new();
        for text in ["0", "3", "-1/2", "i", "-i", "2*i", "1/2+3/4*i", "1-i", "-2-5/3*i"] {
            let v = s.parse(text).unwrap();
            assert_eq!(s.render(&v), text);
            assert_eq!(s.parse(&s.render(&v)).unwrap(), v);
        }
        assert_eq!(s.parse("1+2i").unwrap(), Complex::new(q(1, 1), q(2, 1)));
        assert_eq!(s.conj(&s.parse("1+i").unwrap()), s.parse("1-i").unwrap());
    }

    #[test]
    fn modular_units() {
        let z6 = Modular::new(6).unwrap();
        assert_eq!(z6.inv(&5), Some(5));
        assert_eq!(z6.inv(&2), None);
        assert_eq!(z6.parse("-1").unwrap(), 5);
        assert!(!z6.is_field());
        assert!(Modular::new(7).unwrap().is_field());
        assert!(Modular::new(1).is_err());
        assert_eq!(z6.label(), "Zmod6");
        assert_eq!(Modular::new(3).unwrap().label(), "GF3");
    }
}
