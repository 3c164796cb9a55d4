//! Generalized inverses: {1}-inverses, Moore-Penrose, group, core and dual
//! core inverses, each certified against its defining equations.
//!
//! Two independent routes exist. Enumerable rings can be searched
//! exhaustively; matrix rings over a field have rank-factorization closed
//! forms. A closed-form candidate is only accepted once every defining
//! equation certifies.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::realization::Ring;
use crate::ring::StarRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InverseKind {
    One,
    MoorePenrose,
    Group,
    Core,
    DualCore,
}

impl InverseKind {
    pub const ALL: [InverseKind; 5] =
        [InverseKind::One, InverseKind::MoorePenrose, InverseKind::Group, InverseKind::Core, InverseKind::DualCore];

    pub fn equations(self) -> &'static [&'static str] {
        match self {
            InverseKind::One => &["axa=a"],
            InverseKind::MoorePenrose => &["axa=a", "xax=x", "(ax)*=ax", "(xa)*=xa"],
            InverseKind::Group => &["axa=a", "xax=x", "ax=xa"],
            InverseKind::Core => &["axa=a", "xax=x", "(ax)*=ax", "xa^2=a", "ax^2=x"],
            InverseKind::DualCore => &["axa=a", "xax=x", "(xa)*=xa", "a^2x=a", "x^2a=x"],
        }
    }

    /// Whether theory says at most one solution exists.
    pub fn is_unique(self) -> bool {
        self != InverseKind::One
    }
}

impl fmt::Display for InverseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InverseKind::One => "one",
            InverseKind::MoorePenrose => "mp",
            InverseKind::Group => "group",
            InverseKind::Core => "core",
            InverseKind::DualCore => "dual-core",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub equation: String,
    pub holds: bool,
}

pub fn all_hold(certs: &[Certificate]) -> bool {
    certs.iter().all(|c| c.holds)
}

/// Evaluate the defining equation set of `kind` for the pair `(a, x)`.
pub fn verify_inverse<R: StarRing>(ring: &Ring<R>, a: &R::Elem, x: &R::Elem, kind: InverseKind) -> Vec<Certificate> {
    kind.equations()
        .iter()
        .zip(equation_values(ring, a, x, kind))
        .map(|(eq, holds)| Certificate { equation: eq.to_string(), holds })
        .collect()
}

fn equation_values<R: StarRing>(ring: &Ring<R>, a: &R::Elem, x: &R::Elem, kind: InverseKind) -> Vec<bool> {
    let ax = ring.mul(a, x);
    let axa = || ring.mul(&ax, a) == *a;
    match kind {
        InverseKind::One => vec![axa()],
        InverseKind::MoorePenrose => {
            let xa = ring.mul(x, a);
            vec![axa(), ring.mul(&xa, x) == *x, ring.is_hermitian(&ax), ring.is_hermitian(&xa)]
        }
        InverseKind::Group => {
            let xa = ring.mul(x, a);
            vec![axa(), ring.mul(&xa, x) == *x, ax == xa]
        }
        InverseKind::Core => {
            let xa = ring.mul(x, a);
            vec![axa(), ring.mul(&xa, x) == *x, ring.is_hermitian(&ax), ring.mul(&xa, a) == *a, ring.mul(&ax, x) == *x]
        }
        InverseKind::DualCore => {
            let xa = ring.mul(x, a);
            vec![axa(), ring.mul(&xa, x) == *x, ring.is_hermitian(&xa), ring.mul(a, &ax) == *a, ring.mul(x, &xa) == *x]
        }
    }
}

/// Whether `x` satisfies every equation of `kind` for `a`.
pub fn is_inverse<R: StarRing>(ring: &Ring<R>, a: &R::Elem, x: &R::Elem, kind: InverseKind) -> bool {
    equation_values(ring, a, x, kind).into_iter().all(|b| b)
}

/// Every solution of the defining equations, in canonical order.
pub fn all_solutions<R: StarRing>(ring: &Ring<R>, a: &R::Elem, kind: InverseKind) -> Result<Vec<R::Elem>> {
    Ok(ring.elements()?.iter().filter(|x| is_inverse(ring, a, x, kind)).cloned().collect())
}

/// Exhaustive search. Returns the first solution in canonical order; for
/// kinds that are unique in theory a second distinct solution is a fault.
pub fn search<R: StarRing>(ring: &Ring<R>, a: &R::Elem, kind: InverseKind) -> Result<Option<R::Elem>> {
    let all = ring.elements()?;
    let mut found = all.iter().filter(|x| is_inverse(ring, a, x, kind));
    let first = found.next().cloned();
    if kind.is_unique() {
        if let Some(second) = found.next() {
            return Err(Error::Integrity(format!(
                "{kind} inverse of {} is not unique: {} and {}",
                ring.render(a),
                ring.render(first.as_ref().unwrap()),
                ring.render(second)
            )));
        }
    }
    Ok(first)
}

/// Rank-factorization candidate, certified. `Ok(Err(reason))` reports the
/// failing rank condition or certificate.
pub fn closed_form<R: StarRing>(ring: &Ring<R>, a: &R::Elem, kind: InverseKind) -> Result<Result<R::Elem, String>> {
    let lin = ring.linear().ok_or_else(|| Error::Unsupported(format!("no closed form over {}", ring.descriptor())))?;
    let candidate = match kind {
        InverseKind::One => Ok(lin.inner_inverse(a)),
        InverseKind::MoorePenrose => lin.moore_penrose(a),
        InverseKind::Group => lin.group_inverse(a),
        InverseKind::Core => lin.core_inverse(a),
        InverseKind::DualCore => lin.core_inverse(&ring.star(a)).map(|c| ring.star(&c)),
    };
    Ok(candidate.and_then(|x| {
        let certs = verify_inverse(ring, a, &x, kind);
        if all_hold(&certs) {
            Ok(x)
        } else {
            let failed: Vec<&str> = certs.iter().filter(|c| !c.holds).map(|c| c.equation.as_str()).collect();
            Err(format!("closed-form candidate fails {}", failed.join(", ")))
        }
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Search,
    ClosedForm,
    StarDuality,
}

/// An inverse computation with its provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Computed<E> {
    pub value: Option<E>,
    pub method: Method,
    /// Why the inverse does not exist, when it does not.
    pub absence: Option<String>,
}

/// Closed form first when the ring is a matrix ring over a field; an absent
/// closed form is confirmed by exhaustive search when the ring is enumerable.
/// Other enumerable rings are searched directly.
pub fn compute<R: StarRing>(ring: &Ring<R>, a: &R::Elem, kind: InverseKind) -> Result<Computed<R::Elem>> {
    if kind == InverseKind::DualCore {
        let core_of_star = compute(ring, &ring.star(a), InverseKind::Core)?;
        return Ok(Computed {
            value: core_of_star.value.map(|c| ring.star(&c)),
            method: Method::StarDuality,
            absence: core_of_star.absence.map(|r| format!("a* has no core inverse: {r}")),
        });
    }
    if ring.linear().is_some() {
        match closed_form(ring, a, kind)? {
            Ok(x) => return Ok(Computed { value: Some(x), method: Method::ClosedForm, absence: None }),
            Err(reason) => {
                let mut absence = reason.clone();
                if ring.is_enumerable() {
                    if let Some(x) = search(ring, a, kind)? {
                        return Err(Error::Integrity(format!(
                            "closed form rejected {} ({reason}) but search found {kind} inverse {}",
                            ring.render(a),
                            ring.render(&x)
                        )));
                    }
                    absence = format!("{reason}; {}", exhaustive_absence(ring, kind)?);
                }
                return Ok(Computed { value: None, method: Method::ClosedForm, absence: Some(absence) });
            }
        }
    }
    let value = search(ring, a, kind)?;
    let absence = match value {
        None => Some(exhaustive_absence(ring, kind)?),
        Some(_) => None,
    };
    Ok(Computed { value, method: Method::Search, absence })
}

fn exhaustive_absence<R: StarRing>(ring: &Ring<R>, kind: InverseKind) -> Result<String> {
    let n = ring.finite()?.len();
    Ok(format!("no element satisfies {{{}}} (exhaustive over {n} elements)", kind.equations().join(", ")))
}

pub fn one_inverse<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Result<Option<R::Elem>> {
    if ring.is_enumerable() {
        return search(ring, a, InverseKind::One);
    }
    Ok(compute(ring, a, InverseKind::One)?.value)
}

pub fn moore_penrose<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Result<Option<R::Elem>> {
    Ok(compute(ring, a, InverseKind::MoorePenrose)?.value)
}

pub fn group_inverse<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Result<Option<R::Elem>> {
    Ok(compute(ring, a, InverseKind::Group)?.value)
}

pub fn core_inverse<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Result<Option<R::Elem>> {
    Ok(compute(ring, a, InverseKind::Core)?.value)
}

pub fn dual_core_inverse<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Result<Option<R::Elem>> {
    Ok(compute(ring, a, InverseKind::DualCore)?.value)
}

/// Everything known about the generalized inverses of one element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseBundle<E> {
    pub element: E,
    pub one_inverse: Option<E>,
    pub mp: Option<E>,
    pub group: Option<E>,
    pub core: Option<E>,
    pub dual_core: Option<E>,
    /// Equation certificates for each inverse that exists.
    pub certificates: Vec<(InverseKind, Vec<Certificate>)>,
    /// Reason for each inverse that does not exist.
    pub absences: Vec<(InverseKind, String)>,
    pub methods: Vec<(InverseKind, Method)>,
}

impl<E> InverseBundle<E> {
    pub fn get(&self, kind: InverseKind) -> Option<&E> {
        match kind {
            InverseKind::One => self.one_inverse.as_ref(),
            InverseKind::MoorePenrose => self.mp.as_ref(),
            InverseKind::Group => self.group.as_ref(),
            InverseKind::Core => self.core.as_ref(),
            InverseKind::DualCore => self.dual_core.as_ref(),
        }
    }

    /// Both `a†` and `a^#` exist and coincide.
    pub fn is_ep(&self) -> bool
    where
        E: PartialEq,
    {
        matches!((&self.mp, &self.group), (Some(m), Some(g)) if m == g)
    }
}

pub fn inverse_bundle<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Result<InverseBundle<R::Elem>> {
    let mut bundle = InverseBundle {
        element: a.clone(),
        one_inverse: None,
        mp: None,
        group: None,
        core: None,
        dual_core: None,
        certificates: Vec::new(),
        absences: Vec::new(),
        methods: Vec::new(),
    };
    for kind in InverseKind::ALL {
        let computed = if kind == InverseKind::One && ring.is_enumerable() {
            let value = search(ring, a, kind)?;
            Computed {
                absence: value.is_none().then(|| "no element satisfies {axa=a}".to_string()),
                value,
                method: Method::Search,
            }
        } else {
            compute(ring, a, kind)?
        };
        bundle.methods.push((kind, computed.method));
        match &computed.value {
            Some(x) => bundle.certificates.push((kind, verify_inverse(ring, a, x, kind))),
            None => bundle.absences.push((kind, computed.absence.clone().unwrap_or_else(|| "does not exist".into()))),
        }
        let slot = match kind {
            InverseKind::One => &mut bundle.one_inverse,
            InverseKind::MoorePenrose => &mut bundle.mp,
            InverseKind::Group => &mut bundle.group,
            InverseKind::Core => &mut bundle.core,
            InverseKind::DualCore => &mut bundle.dual_core,
        };
        *slot = computed.value;
    }
    Ok(bundle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecompositionKind {
    /// Idempotent `p` with `ap = pa = 0` and `a + p` a unit.
    Group,
    /// As `Group` with `p` a projection; exists iff `a` is EP.
    Ep,
    /// Projection `p` with `pa = 0` and `a(1-p) + p` a unit.
    Core,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<E> {
    pub kind: DecompositionKind,
    pub p: E,
    /// Inverse of `a + p` (group, ep) or of `a(1-p) + p` (core).
    pub inverse_witness: E,
    pub checks: Vec<Certificate>,
}

impl<E> Decomposition<E> {
    pub fn holds(&self) -> bool {
        all_hold(&self.checks)
    }
}

fn check(name: &str, holds: bool) -> Certificate {
    Certificate { equation: name.to_string(), holds }
}

/// Build the idempotent (or projection) decomposition of `a` and re-derive
/// the corresponding inverse from it.
pub fn decomposition<R: StarRing>(
    ring: &Ring<R>,
    a: &R::Elem,
    kind: DecompositionKind,
) -> Result<Decomposition<R::Elem>> {
    let zero = ring.zero();
    let one = ring.one();
    let missing = |what: &str| Error::Precondition(format!("{} has no {what}", ring.render(a)));
    match kind {
        DecompositionKind::Group | DecompositionKind::Ep => {
            let (inv, label) = if kind == DecompositionKind::Group {
                (group_inverse(ring, a)?.ok_or_else(|| missing("group inverse"))?, "a^#")
            } else {
                let mp = moore_penrose(ring, a)?.ok_or_else(|| missing("Moore-Penrose inverse"))?;
                let g = group_inverse(ring, a)?.ok_or_else(|| missing("group inverse"))?;
                if mp != g {
                    return Err(Error::Precondition(format!("{} is not EP", ring.render(a))));
                }
                (mp, "a†")
            };
            let p = ring.complement(&ring.mul(a, &inv));
            let sum = ring.add(a, &p);
            let w = ring
                .unit_inverse(&sum)
                .ok_or_else(|| Error::Integrity(format!("a + p is not a unit for {}", ring.render(a))))?;
            let mut checks = vec![
                check("p^2=p", ring.is_idempotent(&p)),
                check("ap=0", ring.mul(a, &p) == zero),
                check("pa=0", ring.mul(&p, a) == zero),
                check("(a+p)w=1", ring.mul(&sum, &w) == one),
                check("w(a+p)=1", ring.mul(&w, &sum) == one),
                check(&format!("{label}=w-p"), ring.sub(&w, &p) == inv),
            ];
            if kind == DecompositionKind::Ep {
                checks.insert(1, check("p*=p", ring.is_hermitian(&p)));
            }
            Ok(Decomposition { kind, p, inverse_witness: w, checks })
        }
        DecompositionKind::Core => {
            let c = core_inverse(ring, a)?.ok_or_else(|| missing("core inverse"))?;
            let p = ring.complement(&ring.mul(a, &c));
            let u = ring.add(&ring.mul(a, &ring.complement(&p)), &p);
            let w = ring
                .unit_inverse(&u)
                .ok_or_else(|| Error::Integrity(format!("a(1-p)+p is not a unit for {}", ring.render(a))))?;
            let checks = vec![
                check("p^2=p", ring.is_idempotent(&p)),
                check("p*=p", ring.is_hermitian(&p)),
                check("pa=0", ring.mul(&p, a) == zero),
                check("(a(1-p)+p)w=1", ring.mul(&u, &w) == one),
                check("w(a(1-p)+p)=1", ring.mul(&w, &u) == one),
                check("w=p+core(a)", w == ring.add(&p, &c)),
            ];
            Ok(Decomposition { kind, p, inverse_witness: w, checks })
        }
    }
}

/// Every `p` satisfying the decomposition conditions of `kind`, found by
/// exhaustive search. Group: idempotents with `ap = pa = 0`, `a + p` a unit.
/// Ep: the same with `p` Hermitian. Core: projections with `pa = 0` and
/// `a(1-p) + p` a unit.
pub fn decomposition_search<R: StarRing>(ring: &Ring<R>, a: &R::Elem, kind: DecompositionKind) -> Result<Vec<R::Elem>> {
    let zero = ring.zero();
    Ok(ring
        .elements()?
        .iter()
        .filter(|p| {
            if !ring.is_idempotent(p) || ring.mul(p, a) != zero {
                return false;
            }
            match kind {
                DecompositionKind::Group | DecompositionKind::Ep => {
                    (kind == DecompositionKind::Group || ring.is_hermitian(p))
                        && ring.mul(a, p) == zero
                        && ring.is_unit(&ring.add(a, p))
                }
                DecompositionKind::Core => {
                    ring.is_hermitian(p) && ring.is_unit(&ring.add(&ring.mul(a, &ring.complement(p)), p))
                }
            }
        })
        .cloned()
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Involution, MatrixRing, ModularIntegers};
    use crate::scalar::{Exact, Modular};
    use crate::RationalMatrices;
    use num_rational::BigRational;

    fn q2() -> Ring<RationalMatrices> {
        Ring::new(MatrixRing::new(2, Exact::<BigRational>::new(), Involution::Transpose).unwrap())
    }

    fn zmod6() -> Ring<ModularIntegers> {
        Ring::new(ModularIntegers::new(6).unwrap())
    }

    #[test]
    fn trivial_one_inverses() {
        let r = zmod6();
        assert_eq!(one_inverse(&r, &0).unwrap(), Some(0));
        assert_eq!(one_inverse(&r, &1).unwrap(), Some(1));
        // 2*2*2 = 8 = 2 and 2 is the first candidate after 0, 1 that works
        assert_eq!(one_inverse(&r, &2).unwrap(), Some(2));
    }

    #[test]
    fn zmod6_two() {
        let r = zmod6();
        assert_eq!(moore_penrose(&r, &2).unwrap(), Some(2));
        assert_eq!(group_inverse(&r, &2).unwrap(), Some(2));
        assert_eq!(core_inverse(&r, &2).unwrap(), Some(2));
        assert!(all_hold(&verify_inverse(&r, &2, &2, InverseKind::Group)));
    }

    #[test]
    fn golden_matrix_inverses() {
        let r = q2();
        let a = r.from_scalar_rows(&[&[0, 1], &[0, 1]]).unwrap();
        let mp = r.parse_element("[[0,0],[1/2,1/2]]").unwrap();
        let core = r.parse_element("[[1/2,1/2],[1/2,1/2]]").unwrap();
        assert_eq!(moore_penrose(&r, &a).unwrap(), Some(mp));
        assert_eq!(group_inverse(&r, &a).unwrap(), Some(a.clone()));
        assert_eq!(core_inverse(&r, &a).unwrap(), Some(core.clone()));
        assert!(all_hold(&verify_inverse(&r, &a, &core, InverseKind::Core)));
        let dual = dual_core_inverse(&r, &a).unwrap().unwrap();
        assert!(all_hold(&verify_inverse(&r, &a, &dual, InverseKind::DualCore)));
    }

    #[test]
    fn nilpotent_has_no_group_inverse() {
        let r = q2();
        let n = r.from_scalar_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let c = compute(&r, &n, InverseKind::Group).unwrap();
        assert_eq!(c.value, None);
        assert!(c.absence.unwrap().contains("rank(a^2) = 0"));
        let mp = moore_penrose(&r, &n).unwrap().unwrap();
        assert_eq!(mp, r.from_scalar_rows(&[&[0, 0], &[1, 0]]).unwrap());
    }

    #[test]
    fn zero_candidate_fails_first_penrose_equation() {
        let r = q2();
        let a = r.one();
        let certs = verify_inverse(&r, &a, &r.zero(), InverseKind::MoorePenrose);
        assert_eq!(certs[0], Certificate { equation: "axa=a".into(), holds: false });
    }

    #[test]
    fn decompositions() {
        let r = q2();
        let a = r.from_scalar_rows(&[&[0, 1], &[0, 1]]).unwrap();
        let d = decomposition(&r, &a, DecompositionKind::Core).unwrap();
        assert!(d.holds());
        assert_eq!(d.p, r.parse_element("[[1/2,-1/2],[-1/2,1/2]]").unwrap());
        assert_ne!(r.mul(&a, &d.p), r.zero());
        assert!(matches!(decomposition(&r, &a, DecompositionKind::Ep), Err(Error::Precondition(_))));

        for kind in [DecompositionKind::Group, DecompositionKind::Ep, DecompositionKind::Core] {
            let d = decomposition(&r, &r.one(), kind).unwrap();
            assert_eq!((d.p, d.inverse_witness), (r.zero(), r.one()));
        }

        let z = zmod6();
        let d = decomposition(&z, &2, DecompositionKind::Group).unwrap();
        assert_eq!((d.p, d.inverse_witness), (3, 5));
        assert!(d.holds());
    }

    #[test]
    fn closed_form_agrees_with_search_on_gf2_and_gf3() {
        for p in [2, 3] {
            let r = Ring::new(MatrixRing::new(2, Modular::new(p).unwrap(), Involution::Transpose).unwrap());
            for a in r.elements().unwrap() {
                for kind in [InverseKind::MoorePenrose, InverseKind::Group, InverseKind::Core] {
                    let searched = search(&r, a, kind).unwrap();
                    let closed = closed_form(&r, a, kind).unwrap().ok();
                    assert_eq!(searched, closed, "{kind} of {}", r.render(a));
                }
            }
        }
    }
}
