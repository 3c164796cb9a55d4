//! Ring descriptions, the one-line ring-spec grammar, and ring construction.
//!
//! Grammar:
//!
//! ```text
//! Zmod:<n>          integers mod n, identity involution
//! Mat:<k>:Q         rationals, transpose
//! Mat:<k>:Qi        gaussian rationals, conjugate-transpose
//! Mat:<k>:GF<p>     prime field, transpose
//! Mat:<k>:Zmod<n>   integers mod n, transpose
//! ```

use std::fmt;
use std::str::FromStr;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::realization::Ring;
use crate::ring::{Involution, MatrixRing, ModularIntegers, StarRing};
use crate::scalar::{is_prime, Exact, Modular};
use crate::{GaussianMatrices, ModularMatrices, RationalMatrices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rationals,
    GaussianRationals,
    PrimeField(u64),
    ModularIntegers(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    ModularIntegers { modulus: u64 },
    MatrixRing { dim: usize, scalar: ScalarKind, involution: Involution },
}

impl RingSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            RingSpec::ModularIntegers { modulus } if modulus < 2 => {
                Err(Error::InvalidSpec(format!("modulus must be at least 2, got {modulus}")))
            }
            RingSpec::ModularIntegers { .. } => Ok(()),
            RingSpec::MatrixRing { dim, scalar, involution } => {
                if dim == 0 {
                    return Err(Error::InvalidSpec("matrix dimension must be at least 1".into()));
                }
                match scalar {
                    ScalarKind::PrimeField(p) if !is_prime(p) => {
                        return Err(Error::InvalidSpec(format!("GF{p}: {p} is not prime")))
                    }
                    ScalarKind::ModularIntegers(n) if n < 2 => {
                        return Err(Error::InvalidSpec(format!("modulus must be at least 2, got {n}")))
                    }
                    _ => {}
                }
                let gaussian = scalar == ScalarKind::GaussianRationals;
                match involution {
                    Involution::Identity if dim > 1 => {
                        Err(Error::InvalidSpec("identity involution only on commutative realizations".into()))
                    }
                    Involution::ConjugateTranspose if !gaussian => {
                        Err(Error::InvalidSpec("conjugate-transpose only on gaussian rationals".into()))
                    }
                    Involution::Transpose if gaussian => {
                        Err(Error::InvalidSpec("gaussian rationals carry the conjugate-transpose involution".into()))
                    }
                    _ => Ok(()),
                }
            }
        }
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("`{text}` does not match Zmod:<n> or Mat:<k>:<scalars>"));
        let parts: Vec<&str> = text.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["Zmod", n] => RingSpec::ModularIntegers { modulus: n.parse().map_err(|_| bad())? },
            ["Mat", k, field] => {
                let dim = k.parse().map_err(|_| bad())?;
                let (scalar, involution) = match *field {
                    "Q" => (ScalarKind::Rationals, Involution::Transpose),
                    "Qi" => (ScalarKind::GaussianRationals, Involution::ConjugateTranspose),
                    f => {
                        if let Some(p) = f.strip_prefix("GF") {
                            (ScalarKind::PrimeField(p.parse().map_err(|_| bad())?), Involution::Transpose)
                        } else if let Some(n) = f.strip_prefix("Zmod") {
                            (ScalarKind::ModularIntegers(n.parse().map_err(|_| bad())?), Involution::Transpose)
                        } else {
                            return Err(bad());
                        }
                    }
                };
                RingSpec::MatrixRing { dim, scalar, involution }
            }
            _ => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ModularIntegers { modulus } => write!(f, "Zmod:{modulus}"),
            RingSpec::MatrixRing { dim, scalar, .. } => {
                let s = match scalar {
                    ScalarKind::Rationals => "Q".to_string(),
                    ScalarKind::GaussianRationals => "Qi".to_string(),
                    ScalarKind::PrimeField(p) => format!("GF{p}"),
                    ScalarKind::ModularIntegers(n) => format!("Zmod{n}"),
                };
                write!(f, "Mat:{dim}:{s}")
            }
        }
    }
}

/// A realized ring of any supported kind.
#[derive(Debug)]
pub enum AnyRing {
    Zmod(Ring<ModularIntegers>),
    Rational(Ring<RationalMatrices>),
    Gaussian(Ring<GaussianMatrices>),
    Modular(Ring<ModularMatrices>),
}

/// Run `$body` with `$r` bound to the concrete `Ring<_>` inside an [`AnyRing`].
#[macro_export]
macro_rules! with_ring {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::AnyRing::Zmod($r) => $body,
            $crate::AnyRing::Rational($r) => $body,
            $crate::AnyRing::Gaussian($r) => $body,
            $crate::AnyRing::Modular($r) => $body,
        }
    };
}

impl AnyRing {
    pub fn descriptor(&self) -> String {
        with_ring!(self, r => r.descriptor())
    }

    pub fn cardinality(&self) -> Option<u128> {
        with_ring!(self, r => r.cardinality())
    }
}

/// Build the realization described by `spec`, refusing enumeration above `cap`.
pub fn ring_make(spec: &RingSpec, cap: u128) -> Result<AnyRing> {
    spec.validate()?;
    Ok(match *spec {
        RingSpec::ModularIntegers { modulus } => AnyRing::Zmod(Ring::with_cap(ModularIntegers::new(modulus)?, cap)),
        RingSpec::MatrixRing { dim, scalar, involution } => match scalar {
            ScalarKind::Rationals => {
                AnyRing::Rational(Ring::with_cap(MatrixRing::new(dim, Exact::new(), involution)?, cap))
            }
            ScalarKind::GaussianRationals => {
                AnyRing::Gaussian(Ring::with_cap(MatrixRing::new(dim, Exact::new(), involution)?, cap))
            }
            ScalarKind::PrimeField(n) | ScalarKind::ModularIntegers(n) => {
                AnyRing::Modular(Ring::with_cap(MatrixRing::new(dim, Modular::new(n)?, involution)?, cap))
            }
        },
    })
}

/// Parse an element from the JSON file format
/// `{"rows": k, "cols": k, "entries": [[...], ...]}`.
///
/// Entries may be strings (`"1/2"`, `"1+2*i"`) or JSON integers. For the
/// modular integers a bare number or string is also accepted.
pub fn element_from_json<R: StarRing>(ring: &R, value: &Value) -> Result<R::Elem> {
    let cell = |v: &Value| -> Result<String> {
        match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
            other => Err(Error::Parse(format!("matrix entry must be a string or integer, got {other}"))),
        }
    };
    match value {
        Value::Object(obj) => {
            let entries = obj
                .get("entries")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("missing `entries` array".into()))?;
            let rows: Vec<Vec<String>> = entries
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::Parse("each entry row must be an array".into()))?
                        .iter()
                        .map(cell)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<_>>()?;
            let declared = |key: &str| obj.get(key).and_then(Value::as_u64).map(|v| v as usize);
            let nr = rows.len();
            let nc = rows.first().map_or(0, Vec::len);
            if rows.iter().any(|r| r.len() != nc) {
                return Err(Error::Parse("matrix rows have different lengths".into()));
            }
            if declared("rows").is_some_and(|r| r != nr) || declared("cols").is_some_and(|c| c != nc) {
                return Err(Error::Parse(format!(
                    "declared shape {:?}x{:?} does not match entries {nr}x{nc}",
                    declared("rows"),
                    declared("cols")
                )));
            }
            if ring.is_commutative() && ring.cardinality().is_some() && nr == 1 && nc == 1 {
                // modular integers written as a 1x1 matrix
                if let Ok(e) = ring.parse_element(&rows[0][0]) {
                    return Ok(e);
                }
            }
            let literal: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(","))).collect();
            ring.parse_element(&format!("[{}]", literal.join(",")))
        }
        Value::Array(_) => {
            let rows = value.as_array().unwrap();
            let obj = serde_json::json!({ "entries": rows });
            element_from_json(ring, &obj)
        }
        other => ring.parse_element(&cell(other)?),
    }
}

/// Parse an element given inline on the command line: a literal such as
/// `[[0,1],[1/2,1]]`, a JSON object, or a scalar for the modular integers.
pub fn parse_element_text<R: StarRing>(ring: &R, text: &str) -> Result<R::Elem> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        return element_from_json(ring, &v);
    }
    ring.parse_element(t)
}

/// JSON file form of an element.
pub fn element_to_json<R: StarRing>(ring: &R, a: &R::Elem) -> Value {
    let text = ring.render(a);
    let rows: Vec<Vec<String>> = if text.starts_with('[') {
        text.trim_start_matches("[[")
            .trim_end_matches("]]")
            .split("],[")
            .map(|r| r.split(',').map(str::to_string).collect())
            .collect()
    } else {
        vec![vec![text]]
    };
    serde_json::json!({
        "rows": rows.len(),
        "cols": rows.first().map_or(0, Vec::len),
        "entries": rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::DEFAULT_ENUM_CAP;

    #[test]
    fn grammar_round_trips() {
        for text in ["Zmod:6", "Mat:2:Q", "Mat:3:Qi", "Mat:2:GF3", "Mat:2:Zmod4"] {
            let spec: RingSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("Mat:2:GF4".parse::<RingSpec>().is_err());
        assert!("Mat:0:Q".parse::<RingSpec>().is_err());
        assert!("Zmod:1".parse::<RingSpec>().is_err());
        assert!("Foo:2".parse::<RingSpec>().is_err());
        assert!("Mat:2:R".parse::<RingSpec>().is_err());
    }

    #[test]
    fn identity_involution_on_noncommutative_ring_is_rejected() {
        let spec = RingSpec::MatrixRing { dim: 2, scalar: ScalarKind::Rationals, involution: Involution::Identity };
        assert!(matches!(ring_make(&spec, DEFAULT_ENUM_CAP), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn ring_make_sizes() {
        let zmod6 = ring_make(&"Zmod:6".parse().unwrap(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(zmod6.cardinality(), Some(6));
        let gf2 = ring_make(&"Mat:2:GF2".parse().unwrap(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(gf2.cardinality(), Some(16));
        let q = ring_make(&"Mat:3:Q".parse().unwrap(), DEFAULT_ENUM_CAP).unwrap();
        assert_eq!(q.cardinality(), None);
    }

    #[test]
    fn json_element_format() {
        let AnyRing::Rational(r) = ring_make(&"Mat:2:Q".parse().unwrap(), DEFAULT_ENUM_CAP).unwrap() else {
            unreachable!()
        };
        let v: Value = serde_json::from_str(r#"{"rows":2,"cols":2,"entries":[["0","1"],[0,"1/2"]]}"#).unwrap();
        let a = element_from_json(r.algebra(), &v).unwrap();
        assert_eq!(r.render(&a), "[[0,1],[0,1/2]]");
        assert_eq!(element_from_json(r.algebra(), &element_to_json(r.algebra(), &a)).unwrap(), a);
        let bad: Value = serde_json::from_str(r#"{"rows":3,"cols":2,"entries":[["0","1"],["0","1"]]}"#).unwrap();
        assert!(element_from_json(r.algebra(), &bad).is_err());

        let AnyRing::Zmod(z) = ring_make(&"Zmod:6".parse().unwrap(), DEFAULT_ENUM_CAP).unwrap() else { unreachable!() };
        assert_eq!(parse_element_text(z.algebra(), "8").unwrap(), 2);
        let one_by_one: Value = serde_json::from_str(r#"{"rows":1,"cols":1,"entries":[["5"]]}"#).unwrap();
        assert_eq!(element_from_json(z.algebra(), &one_by_one).unwrap(), 5);
    }
}
