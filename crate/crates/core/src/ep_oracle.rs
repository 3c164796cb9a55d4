//! EP characterizations as independently evaluable predicates.
//!
//! Each [`CharacterizationId`] names one equivalent condition for `a` being
//! EP (that is, `a†` and `a^#` exist and coincide). Evaluation is tri-state:
//! a condition whose invertibility hypothesis fails is inapplicable, not
//! false. Existence conditions are searched exhaustively on enumerable
//! rings; elsewhere a constructive witness is tried, and when none is found
//! the negative verdict is flagged as resting on the equivalence itself rather than
//! independently established.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen_inverse::{self, Certificate, InverseKind};
use crate::realization::Ring;
use crate::ring::StarRing;
use crate::subset::{self, SubsetKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    /// The unknown multiplies `a` from the left (`xa`, `xa^2`).
    Left,
    /// The unknown multiplies `a` from the right (`ay`, `a^2y`).
    Right,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Left, Side::Right];

    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Requirement {
    MoorePenrose,
    Group,
    Core,
}

impl Requirement {
    fn name(self) -> &'static str {
        match self {
            Requirement::MoorePenrose => "mp",
            Requirement::Group => "group",
            Requirement::Core => "core",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CharacterizationId {
    /// `a^#` exists and `aa^#` is Hermitian.
    HermitianGroupProjector,
    /// Left: `(xa)* = xa, xa^2 = a, ax^2 = x`; right: the star-dual system.
    ThreeEquations(Side),
    /// `a^2x = a, ax = xa, (ax)* = ax`.
    CommutingEquations,
    /// Existence of an inner/outer inverse with matching ideals or
    /// annihilators; variants 2 to 9.
    IdealConditions { side: Side, variant: u8 },
    /// Annihilator inclusion for `a^2` plus a one-sided Hermitian solution.
    TwoConditions(Side),
    /// `a ∈ R†` and `[a, a†] = 0`.
    MpCommutes,
    /// `a` core invertible and `[a, core a] = 0`.
    CoreCommutes,
    /// `a` core invertible and `a^# = core a`.
    GroupEqualsCore,
    /// `a ∈ R† ∩ R^#` and `a† = core a`.
    MpEqualsCore,
    /// Identities on the core inverse; variants 2 to 8.
    CoreConditions(u8),
    /// `aR = a*R` (right) or `Ra = Ra*` (left) under an invertibility hypothesis.
    RangeEquality { requirement: Requirement, side: Side },
    /// One-sided range inclusions between `a` and `a*`; variants 1 to 4.
    Inclusions { requirement: Requirement, variant: u8 },
    /// `[core a, (core a · a)* a] = 0`.
    CoreCommutator,
    /// A projection `p` with `ap = pa = 0` and `a + p` a unit.
    ProjectionSplit,
    /// A unit `u` with `core a = ua` (or `a† = ua`).
    UnitFactor(Requirement),
    /// Some `b` with `core a = ba`, or a left invertible `v` with `a† = va`.
    LeftFactor(Requirement),
    /// `a ∈ R† ∩ R^#` and `a† = ba` for some `b`.
    GroupMpLeftFactor,
    /// `a ∈ R^#` and `[a^n a†, a† a^n] = 0`.
    NEp(u8),
    /// Paired commutators of `a`, `a†`, `aa†`, `a†a`; variants 2 to 5.
    MpCommutators(u8),
    /// `aR = a^2R` (or `Ra = Ra^2`) plus a second condition; variants 2 to 5.
    PowerRange { side: Side, variant: u8 },
}

use CharacterizationId as C;

/// Largest `n` accepted for the n-EP family.
pub const MAX_N: u8 = 8;

impl CharacterizationId {
    pub fn name(self) -> String {
        match self {
            C::HermitianGroupProjector => "hermitian-group-projector".into(),
            C::ThreeEquations(s) => format!("three-equations-{}", s.name()),
            C::CommutingEquations => "commuting-equations".into(),
            C::IdealConditions { side, .. } => format!("ideal-conditions-{}", side.name()),
            C::TwoConditions(s) => format!("two-conditions-{}", s.name()),
            C::MpCommutes => "mp-commutes".into(),
            C::CoreCommutes => "core-commutes".into(),
            C::GroupEqualsCore => "group-equals-core".into(),
            C::MpEqualsCore => "mp-equals-core".into(),
            C::CoreConditions(_) => "core-conditions".into(),
            C::RangeEquality { requirement, side } => {
                format!("range-equality-{}-{}", requirement.name(), side.name())
            }
            C::Inclusions { requirement, .. } => format!("inclusions-{}", requirement.name()),
            C::CoreCommutator => "core-commutator".into(),
            C::ProjectionSplit => "projection-split".into(),
            C::UnitFactor(r) => format!("unit-factor-{}", r.name()),
            C::LeftFactor(r) => format!("left-factor-{}", r.name()),
            C::GroupMpLeftFactor => "group-mp-left-factor".into(),
            C::NEp(_) => "n-ep".into(),
            C::MpCommutators(_) => "mp-commutators".into(),
            C::PowerRange { side, .. } => format!("power-range-{}", side.name()),
        }
    }

    pub fn variant(self) -> Option<u8> {
        match self {
            C::IdealConditions { variant, .. }
            | C::Inclusions { variant, .. }
            | C::PowerRange { variant, .. }
            | C::CoreConditions(variant)
            | C::NEp(variant)
            | C::MpCommutators(variant) => Some(variant),
            _ => None,
        }
    }

    fn variant_range(self) -> Option<(u8, u8)> {
        match self {
            C::IdealConditions { .. } => Some((2, 9)),
            C::CoreConditions(_) => Some((2, 8)),
            C::Inclusions { .. } => Some((1, 4)),
            C::NEp(_) => Some((1, MAX_N)),
            C::MpCommutators(_) | C::PowerRange { .. } => Some((2, 5)),
            _ => None,
        }
    }

    /// Rejects out-of-range variants and unsupported hypothesis combinations.
    pub fn validate(self) -> Result<Self> {
        if let (Some(v), Some((lo, hi))) = (self.variant(), self.variant_range()) {
            if v < lo || v > hi {
                return Err(Error::UnknownVariant { what: "characterization", variant: v as u32 });
            }
        }
        match self {
            C::RangeEquality { requirement: Requirement::Core, .. }
            | C::Inclusions { requirement: Requirement::MoorePenrose, .. }
            | C::UnitFactor(Requirement::Group)
            | C::LeftFactor(Requirement::Group) => Err(Error::InvalidSpec(format!("{self} is not a characterization"))),
            _ => Ok(self),
        }
    }

    /// Inverses that must exist for the condition to apply.
    pub fn requirements(self) -> &'static [Requirement] {
        use Requirement::*;
        match self {
            C::MpCommutes
            | C::NEp(_)
            | C::MpCommutators(_)
            | C::PowerRange { .. }
            | C::UnitFactor(MoorePenrose)
            | C::LeftFactor(MoorePenrose)
            | C::RangeEquality { requirement: MoorePenrose, .. } => &[MoorePenrose],
            C::RangeEquality { requirement: Group, .. } | C::Inclusions { requirement: Group, .. } => &[Group],
            C::CoreCommutes
            | C::GroupEqualsCore
            | C::CoreCommutator
            | C::UnitFactor(Core)
            | C::LeftFactor(Core)
            | C::Inclusions { requirement: Core, .. } => &[Core],
            C::CoreConditions(6) | C::CoreConditions(7) | C::MpEqualsCore | C::GroupMpLeftFactor => {
                &[MoorePenrose, Group]
            }
            C::CoreConditions(_) => &[Core],
            _ => &[],
        }
    }

    /// Whether the condition asserts the existence of a witness element.
    pub fn is_existential(self) -> bool {
        matches!(
            self,
            C::ThreeEquations(_)
                | C::CommutingEquations
                | C::IdealConditions { .. }
                | C::TwoConditions(_)
                | C::ProjectionSplit
                | C::UnitFactor(_)
                | C::LeftFactor(_)
                | C::GroupMpLeftFactor
        )
    }

    pub fn statement(self) -> Statement {
        use Statement as S;
        match self {
            C::HermitianGroupProjector => S::HermitianGroupProjector,
            C::ThreeEquations(Side::Left) => S::LeftThreeEquations,
            C::ThreeEquations(Side::Right) => S::RightThreeEquations,
            C::CommutingEquations => S::CommutingEquations,
            C::IdealConditions { side: Side::Left, .. } => S::LeftIdealConditions,
            C::IdealConditions { side: Side::Right, .. } => S::RightIdealConditions,
            C::TwoConditions(_) => S::TwoConditions,
            C::MpCommutes | C::CoreCommutes | C::GroupEqualsCore | C::MpEqualsCore => S::CoreEpCriteria,
            C::CoreConditions(_) => S::CoreConditions,
            C::RangeEquality { .. } => S::RangeEquality,
            C::Inclusions { requirement: Requirement::Group, .. } => S::GroupInclusions,
            C::Inclusions { .. } => S::CoreInclusions,
            C::CoreCommutator => S::CoreCommutator,
            C::ProjectionSplit => S::ProjectionDecomposition,
            C::UnitFactor(Requirement::Core) | C::LeftFactor(Requirement::Core) => S::CoreUnitFactor,
            C::UnitFactor(_) | C::LeftFactor(_) => S::MpUnitFactor,
            C::GroupMpLeftFactor => S::GroupMpLeftFactor,
            C::NEp(_) => S::NEp,
            C::MpCommutators(_) => S::MpCommutators,
            C::PowerRange { side: Side::Right, .. } => S::RightPowerRange,
            C::PowerRange { side: Side::Left, .. } => S::LeftPowerRange,
        }
    }

    /// Every characterization, in canonical order, with n-EP up to `n_max`.
    pub fn all(n_max: u8) -> Vec<CharacterizationId> {
        use Requirement::*;
        let mut ids = vec![C::HermitianGroupProjector];
        ids.extend(Side::BOTH.map(C::ThreeEquations));
        ids.push(C::CommutingEquations);
        for side in Side::BOTH {
            ids.extend((2..=9).map(|variant| C::IdealConditions { side, variant }));
        }
        ids.extend(Side::BOTH.map(C::TwoConditions));
        ids.extend([C::MpCommutes, C::CoreCommutes, C::GroupEqualsCore, C::MpEqualsCore]);
        ids.extend((2..=8).map(C::CoreConditions));
        for requirement in [Group, MoorePenrose] {
            ids.extend(Side::BOTH.map(|side| C::RangeEquality { requirement, side }));
        }
        for requirement in [Group, Core] {
            ids.extend((1..=4).map(|variant| C::Inclusions { requirement, variant }));
        }
        ids.extend([
            C::CoreCommutator,
            C::ProjectionSplit,
            C::UnitFactor(Core),
            C::LeftFactor(Core),
            C::UnitFactor(MoorePenrose),
            C::LeftFactor(MoorePenrose),
            C::GroupMpLeftFactor,
        ]);
        ids.extend((1..=n_max.min(MAX_N)).map(C::NEp));
        ids.extend((2..=5).map(C::MpCommutators));
        for side in [Side::Right, Side::Left] {
            ids.extend((2..=5).map(|variant| C::PowerRange { side, variant }));
        }
        ids
    }
}

impl fmt::Display for CharacterizationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant() {
            Some(v) => write!(f, "{}:{v}", self.name()),
            None => f.write_str(&self.name()),
        }
    }
}

impl FromStr for CharacterizationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, variant) = match s.split_once(':') {
            Some((n, v)) => {
                let v: u8 = v.parse().map_err(|_| Error::Parse(format!("bad characterization variant in {s:?}")))?;
                (n, Some(v))
            }
            None => (s, None),
        };
        let with_variant = |id: CharacterizationId, v: u8| match id {
            C::IdealConditions { side, .. } => C::IdealConditions { side, variant: v },
            C::CoreConditions(_) => C::CoreConditions(v),
            C::Inclusions { requirement, .. } => C::Inclusions { requirement, variant: v },
            C::NEp(_) => C::NEp(v),
            C::MpCommutators(_) => C::MpCommutators(v),
            C::PowerRange { side, .. } => C::PowerRange { side, variant: v },
            other => other,
        };
        let probe = |v: u8| {
            CharacterizationId::all(MAX_N).into_iter().find(|id| id.name() == name).map(|id| with_variant(id, v))
        };
        let id =
            probe(variant.unwrap_or(0)).ok_or_else(|| Error::Parse(format!("unknown characterization {name:?}")))?;
        match (id.variant(), variant) {
            (Some(_), None) => Err(Error::Parse(format!("{name} needs a variant, e.g. {name}:2"))),
            (None, Some(_)) => Err(Error::Parse(format!("{name} takes no variant"))),
            _ => id.validate(),
        }
    }
}

/// The statements verified by the suite. Every statement is covered by at
/// least one characterization or structural check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Statement {
    HermitianGroupProjector,
    LeftThreeEquations,
    LeftThreeEquationSolutions,
    AnnihilatorDuality,
    LeftIdealConditions,
    LeftIdealSolutions,
    RightThreeEquations,
    RightThreeEquationSolutions,
    RightIdealConditions,
    RightIdealSolutions,
    CommutingEquations,
    CommutingSolutions,
    TwoConditions,
    TwoConditionSolutions,
    CoreFiveEquations,
    IdempotentDecomposition,
    ProjectionDecomposition,
    CoreProjectionDecomposition,
    CoreEpCriteria,
    CoreIdentities,
    CoreConditions,
    RangeEquality,
    GroupInclusions,
    CoreInclusions,
    CoreCommutator,
    CoreUnitFactor,
    CoreFactorSolutions,
    NEp,
    MpUnitFactor,
    GroupMpLeftFactor,
    MpCommutators,
    RightPowerRange,
    LeftPowerRange,
    StarSymmetry,
}

impl Statement {
    pub const ALL: [Statement; 34] = [
        Statement::HermitianGroupProjector,
        Statement::LeftThreeEquations,
        Statement::LeftThreeEquationSolutions,
        Statement::AnnihilatorDuality,
        Statement::LeftIdealConditions,
        Statement::LeftIdealSolutions,
        Statement::RightThreeEquations,
        Statement::RightThreeEquationSolutions,
        Statement::RightIdealConditions,
        Statement::RightIdealSolutions,
        Statement::CommutingEquations,
        Statement::CommutingSolutions,
        Statement::TwoConditions,
        Statement::TwoConditionSolutions,
        Statement::CoreFiveEquations,
        Statement::IdempotentDecomposition,
        Statement::ProjectionDecomposition,
        Statement::CoreProjectionDecomposition,
        Statement::CoreEpCriteria,
        Statement::CoreIdentities,
        Statement::CoreConditions,
        Statement::RangeEquality,
        Statement::GroupInclusions,
        Statement::CoreInclusions,
        Statement::CoreCommutator,
        Statement::CoreUnitFactor,
        Statement::CoreFactorSolutions,
        Statement::NEp,
        Statement::MpUnitFactor,
        Statement::GroupMpLeftFactor,
        Statement::MpCommutators,
        Statement::RightPowerRange,
        Statement::LeftPowerRange,
        Statement::StarSymmetry,
    ];
}

/// The inverses of one element, computed once and shared by every check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facts<E> {
    pub a: E,
    pub star: E,
    pub mp: Option<E>,
    pub group: Option<E>,
    pub core: Option<E>,
    /// `a†` and `a^#` exist and are equal.
    pub ep: bool,
}

impl<E: Clone + PartialEq> Facts<E> {
    pub fn new<R: StarRing<Elem = E>>(ring: &Ring<R>, a: &E) -> Result<Self> {
        let mp = gen_inverse::moore_penrose(ring, a)?;
        let group = gen_inverse::group_inverse(ring, a)?;
        let core = gen_inverse::core_inverse(ring, a)?;
        let ep = matches!((&mp, &group), (Some(m), Some(g)) if m == g);
        if let Some(m) = &mp {
            let commutes = ring.commutator(a, m) == ring.zero();
            if commutes != ep {
                return Err(Error::Integrity(format!(
                    "EP definition ({ep}) and [a, a†] = 0 ({commutes}) disagree for {}",
                    ring.render(a)
                )));
            }
        }
        Ok(Facts { a: a.clone(), star: ring.star(a), mp, group, core, ep })
    }

    fn get(&self, r: Requirement) -> Option<&E> {
        match r {
            Requirement::MoorePenrose => self.mp.as_ref(),
            Requirement::Group => self.group.as_ref(),
            Requirement::Core => self.core.as_ref(),
        }
    }

    fn need(&self, r: Requirement) -> &E {
        self.get(r).expect("requirement checked before evaluation")
    }
}

/// `a† = a^#`, cross-checked against `[a, a†] = 0`.
pub fn ep_baseline<R: StarRing>(ring: &Ring<R>, a: &R::Elem) -> Result<bool> {
    Ok(Facts::new(ring, a)?.ep)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    True,
    False,
    Inapplicable,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::True
        } else {
            Outcome::False
        }
    }

    pub fn as_bool(self) -> Option<bool> {
        match self {
            Outcome::True => Some(true),
            Outcome::False => Some(false),
            Outcome::Inapplicable => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Every ring element was tried.
    Exhaustive,
    /// A closed-form witness was built and certified.
    Constructive,
    /// The condition was evaluated exactly with no search involved.
    Direct,
    /// No constructive witness was found; the negative value rests on the
    /// equivalence being verified, so it is not independent evidence.
    DerivedFromTheorem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation<E> {
    pub outcome: Outcome,
    pub witness: Option<E>,
    pub provenance: Provenance,
}

impl<E> Evaluation<E> {
    fn direct(b: bool) -> Self {
        Evaluation { outcome: Outcome::from_bool(b), witness: None, provenance: Provenance::Direct }
    }

    fn direct_with(b: bool, witness: E) -> Self {
        Evaluation { outcome: Outcome::from_bool(b), witness: Some(witness), provenance: Provenance::Direct }
    }

    fn inapplicable() -> Self {
        Evaluation { outcome: Outcome::Inapplicable, witness: None, provenance: Provenance::Direct }
    }
}

type Pred<'a, E> = Box<dyn Fn(&E) -> Result<bool> + 'a>;

fn left_invertible<R: StarRing>(ring: &Ring<R>, v: &R::Elem) -> Result<bool> {
    if ring.is_enumerable() {
        let one = ring.one();
        Ok(ring.elements()?.iter().any(|t| ring.mul(t, v) == one))
    } else {
        // square matrices over a field: one-sided and two-sided coincide
        Ok(ring.is_unit(v))
    }
}

fn ideal_condition<R: StarRing>(ring: &Ring<R>, a: &R::Elem, x: &R::Elem, side: Side, variant: u8) -> Result<bool> {
    use SubsetKind::*;
    let inner = || ring.mul3(a, x, a) == *a;
    let outer = || ring.mul3(x, a, x) == *x;
    let xs = ring.star(x);
    let eq = |s, u: &R::Elem, t, v: &R::Elem| subset::equal(ring, s, u, t, v);
    let inc = |s, u: &R::Elem, t, v: &R::Elem| subset::included(ring, s, u, t, v);
    let first = if variant <= 3 || (6..=7).contains(&variant) { inner() } else { outer() };
    if !first {
        return Ok(false);
    }
    Ok(match side {
        Side::Left => match variant {
            2..=5 => {
                eq(RightIdeal, x, RightIdeal, a)?
                    && match variant {
                        2 | 4 => eq(LeftIdeal, &xs, LeftIdeal, a)?,
                        3 => inc(LeftIdeal, &xs, LeftIdeal, a)?,
                        _ => inc(LeftIdeal, a, LeftIdeal, &xs)?,
                    }
            }
            _ => {
                eq(LeftAnnihilator, x, LeftAnnihilator, a)?
                    && match variant {
                        6 | 8 => eq(RightAnnihilator, &xs, RightAnnihilator, a)?,
                        7 => inc(RightAnnihilator, a, RightAnnihilator, &xs)?,
                        _ => inc(RightAnnihilator, &xs, RightAnnihilator, a)?,
                    }
            }
        },
        Side::Right => match variant {
            2..=5 => {
                eq(LeftIdeal, x, LeftIdeal, a)?
                    && match variant {
                        2 | 4 => eq(RightIdeal, &xs, RightIdeal, a)?,
                        3 => inc(RightIdeal, &xs, RightIdeal, a)?,
                        _ => inc(RightIdeal, a, RightIdeal, &xs)?,
                    }
            }
            _ => {
                eq(RightAnnihilator, x, RightAnnihilator, a)?
                    && match variant {
                        6 | 8 => eq(LeftAnnihilator, &xs, LeftAnnihilator, a)?,
                        7 => inc(LeftAnnihilator, a, LeftAnnihilator, &xs)?,
                        _ => inc(LeftAnnihilator, &xs, LeftAnnihilator, a)?,
                    }
            }
        },
    })
}

/// The defining predicate of an existential characterization, for search
/// and for re-certifying returned witnesses.
pub fn witness_condition<'a, R: StarRing>(
    ring: &'a Ring<R>,
    f: &'a Facts<R::Elem>,
    id: CharacterizationId,
) -> Option<Pred<'a, R::Elem>> {
    let a = &f.a;
    let pred: Pred<'a, R::Elem> = match id {
        C::ThreeEquations(Side::Left) => Box::new(move |x| {
            let xa = ring.mul(x, a);
            Ok(ring.is_hermitian(&xa) && ring.mul(&xa, a) == *a && ring.mul3(a, x, x) == *x)
        }),
        C::ThreeEquations(Side::Right) => Box::new(move |y| {
            let ay = ring.mul(a, y);
            Ok(ring.is_hermitian(&ay) && ring.mul(a, &ay) == *a && ring.mul3(y, y, a) == *y)
        }),
        C::CommutingEquations => Box::new(move |x| {
            let ax = ring.mul(a, x);
            Ok(ring.mul(a, &ax) == *a && ax == ring.mul(x, a) && ring.is_hermitian(&ax))
        }),
        C::IdealConditions { side, variant } => Box::new(move |x| ideal_condition(ring, a, x, side, variant)),
        C::TwoConditions(Side::Left) => Box::new(move |x| {
            let xa = ring.mul(x, a);
            Ok(ring.mul(&xa, a) == *a && ring.is_hermitian(&xa))
        }),
        C::TwoConditions(Side::Right) => Box::new(move |x| {
            let ax = ring.mul(a, x);
            Ok(ring.mul(a, &ax) == *a && ring.is_hermitian(&ax))
        }),
        C::ProjectionSplit => Box::new(move |p| {
            let zero = ring.zero();
            Ok(ring.is_idempotent(p)
                && ring.is_hermitian(p)
                && ring.mul(a, p) == zero
                && ring.mul(p, a) == zero
                && ring.is_unit(&ring.add(a, p)))
        }),
        C::UnitFactor(r) => {
            let target = f.get(r)?;
            Box::new(move |u| Ok(ring.mul(u, a) == *target && ring.is_unit(u)))
        }
        C::LeftFactor(Requirement::MoorePenrose) => {
            let target = f.mp.as_ref()?;
            Box::new(move |v| Ok(ring.mul(v, a) == *target && left_invertible(ring, v)?))
        }
        C::LeftFactor(r) => {
            let target = f.get(r)?;
            Box::new(move |b| Ok(ring.mul(b, a) == *target))
        }
        C::GroupMpLeftFactor => {
            let target = f.mp.as_ref()?;
            Box::new(move |b| Ok(ring.mul(b, a) == *target))
        }
        _ => return None,
    };
    Some(pred)
}

/// `(a^#)^2 + 1 - aa^#`.
fn unit_candidate<R: StarRing>(ring: &Ring<R>, a: &R::Elem, g: &R::Elem) -> R::Elem {
    ring.add(&ring.mul(g, g), &ring.complement(&ring.mul(a, g)))
}

fn constructive_candidates<R: StarRing>(ring: &Ring<R>, f: &Facts<R::Elem>, id: CharacterizationId) -> Vec<R::Elem> {
    let mut out = Vec::new();
    match id {
        C::ProjectionSplit => {
            if let Some(m) = &f.mp {
                out.push(ring.complement(&ring.mul(&f.a, m)));
            }
        }
        C::UnitFactor(_) | C::LeftFactor(_) | C::GroupMpLeftFactor => {
            if let Some(g) = &f.group {
                out.push(unit_candidate(ring, &f.a, g));
            }
        }
        _ => {
            out.extend(f.mp.iter().cloned());
            out.extend(f.group.iter().filter(|g| Some(*g) != f.mp.as_ref()).cloned());
        }
    }
    out
}

fn exists<R: StarRing>(
    ring: &Ring<R>,
    candidates: Vec<R::Elem>,
    pred: &Pred<'_, R::Elem>,
) -> Result<Evaluation<R::Elem>> {
    if ring.is_enumerable() {
        for x in ring.elements()? {
            if pred(x)? {
                return Ok(Evaluation {
                    outcome: Outcome::True,
                    witness: Some(x.clone()),
                    provenance: Provenance::Exhaustive,
                });
            }
        }
        return Ok(Evaluation { outcome: Outcome::False, witness: None, provenance: Provenance::Exhaustive });
    }
    for c in candidates {
        if pred(&c)? {
            return Ok(Evaluation { outcome: Outcome::True, witness: Some(c), provenance: Provenance::Constructive });
        }
    }
    Ok(Evaluation { outcome: Outcome::False, witness: None, provenance: Provenance::DerivedFromTheorem })
}

/// Factor conditions over a matrix ring with field scalars are decided by
/// row spaces: `t = ba` for some `b` iff `Rt ⊆ Ra`, and for some unit `b`
/// iff `Rt = Ra`.
fn factor_by_rows<R: StarRing>(
    ring: &Ring<R>,
    f: &Facts<R::Elem>,
    id: CharacterizationId,
    pred: &Pred<'_, R::Elem>,
) -> Result<Evaluation<R::Elem>> {
    use SubsetKind::LeftIdeal;
    let lin = ring.linear().ok_or_else(|| Error::Unsupported("factor test needs a field".into()))?;
    let (target, unit) = match id {
        C::UnitFactor(r) => (f.need(r), true),
        C::LeftFactor(Requirement::MoorePenrose) => (f.need(Requirement::MoorePenrose), true),
        C::LeftFactor(r) => (f.need(r), false),
        _ => (f.need(Requirement::MoorePenrose), false),
    };
    let holds = if unit {
        subset::equal(ring, LeftIdeal, target, LeftIdeal, &f.a)?
    } else {
        subset::included(ring, LeftIdeal, target, LeftIdeal, &f.a)?
    };
    let mut candidates = constructive_candidates(ring, f, id);
    if !unit {
        candidates.push(ring.mul(target, &lin.inner_inverse(&f.a)));
    }
    let mut witness = None;
    for c in candidates {
        if pred(&c)? {
            witness = Some(c);
            break;
        }
    }
    Ok(Evaluation { outcome: Outcome::from_bool(holds), witness, provenance: Provenance::Direct })
}

fn is_zero_commutator<R: StarRing>(ring: &Ring<R>, x: &R::Elem, y: &R::Elem) -> bool {
    ring.commutator(x, y) == ring.zero()
}

/// `[a^n a†, a† a^n] = 0`; inapplicable without `a†`.
pub fn n_ep<R: StarRing>(ring: &Ring<R>, f: &Facts<R::Elem>, n: u8) -> Evaluation<R::Elem> {
    match &f.mp {
        None => Evaluation::inapplicable(),
        Some(m) => {
            let an = ring.pow(&f.a, n as u32);
            Evaluation::direct(is_zero_commutator(ring, &ring.mul(&an, m), &ring.mul(m, &an)))
        }
    }
}

pub fn evaluate<R: StarRing>(
    ring: &Ring<R>,
    f: &Facts<R::Elem>,
    id: CharacterizationId,
) -> Result<Evaluation<R::Elem>> {
    use SubsetKind::*;
    id.validate()?;
    if id.requirements().iter().any(|r| f.get(*r).is_none()) {
        return Ok(Evaluation::inapplicable());
    }
    let a = &f.a;

    if let Some(pred) = witness_condition(ring, f, id) {
        if let C::TwoConditions(side) = id {
            let a2 = ring.mul(a, a);
            let annihilators = match side {
                Side::Left => subset::included(ring, LeftAnnihilator, &a2, LeftAnnihilator, a)?,
                Side::Right => subset::included(ring, RightAnnihilator, &a2, RightAnnihilator, a)?,
            };
            if !annihilators {
                return Ok(Evaluation::direct(false));
            }
        }
        let factor = matches!(id, C::UnitFactor(_) | C::LeftFactor(_) | C::GroupMpLeftFactor);
        if factor && !ring.is_enumerable() && ring.linear().is_some() {
            return factor_by_rows(ring, f, id, &pred);
        }
        return exists(ring, constructive_candidates(ring, f, id), &pred);
    }

    Ok(match id {
        C::HermitianGroupProjector => match &f.group {
            Some(g) => {
                let proj = ring.mul(a, g);
                Evaluation::direct_with(ring.is_hermitian(&proj), proj)
            }
            None => Evaluation::direct(false),
        },
        C::MpCommutes => Evaluation::direct(is_zero_commutator(ring, a, f.need(Requirement::MoorePenrose))),
        C::CoreCommutes => Evaluation::direct(is_zero_commutator(ring, a, f.need(Requirement::Core))),
        C::GroupEqualsCore => Evaluation::direct(f.group.as_ref() == f.core.as_ref()),
        C::MpEqualsCore => Evaluation::direct(f.mp.is_some() && f.mp.as_ref() == f.core.as_ref()),
        C::CoreConditions(v) => core_condition(ring, f, v)?,
        C::RangeEquality { side, .. } => Evaluation::direct(match side {
            Side::Right => subset::equal(ring, RightIdeal, a, RightIdeal, &f.star)?,
            Side::Left => subset::equal(ring, LeftIdeal, a, LeftIdeal, &f.star)?,
        }),
        C::Inclusions { variant, .. } => Evaluation::direct(match variant {
            1 => subset::included(ring, RightIdeal, a, RightIdeal, &f.star)?,
            2 => subset::included(ring, LeftIdeal, a, LeftIdeal, &f.star)?,
            3 => subset::included(ring, RightIdeal, &f.star, RightIdeal, a)?,
            _ => subset::included(ring, LeftIdeal, &f.star, LeftIdeal, a)?,
        }),
        C::CoreCommutator => {
            let c = f.need(Requirement::Core);
            let rhs = ring.mul(&ring.star(&ring.mul(c, a)), a);
            Evaluation::direct(is_zero_commutator(ring, c, &rhs))
        }
        C::NEp(n) => {
            let e = n_ep(ring, f, n);
            Evaluation::direct(f.group.is_some() && e.outcome == Outcome::True)
        }
        C::MpCommutators(v) => {
            let m = f.need(Requirement::MoorePenrose);
            let ma = ring.mul(m, a);
            let am = ring.mul(a, m);
            let first = if v <= 3 { is_zero_commutator(ring, &ma, a) } else { is_zero_commutator(ring, &ma, m) };
            let second = if v % 2 == 0 { is_zero_commutator(ring, m, &am) } else { is_zero_commutator(ring, a, &am) };
            Evaluation::direct(first && second)
        }
        C::PowerRange { side, variant } => {
            let m = f.need(Requirement::MoorePenrose);
            let a2 = ring.mul(a, a);
            let holds = match side {
                Side::Right => {
                    subset::equal(ring, RightIdeal, a, RightIdeal, &a2)?
                        && match variant {
                            2 => is_zero_commutator(ring, &ring.mul(m, a), m),
                            3 => is_zero_commutator(ring, &ring.mul(m, a), a),
                            4 => subset::included(ring, RightIdeal, a, RightIdeal, m)?,
                            _ => subset::included(ring, RightIdeal, a, RightIdeal, &f.star)?,
                        }
                }
                Side::Left => {
                    subset::equal(ring, LeftIdeal, a, LeftIdeal, &a2)?
                        && match variant {
                            2 => is_zero_commutator(ring, &ring.mul(a, m), m),
                            3 => is_zero_commutator(ring, &ring.mul(a, m), a),
                            4 => subset::included(ring, LeftIdeal, a, LeftIdeal, m)?,
                            _ => subset::included(ring, LeftIdeal, a, LeftIdeal, &f.star)?,
                        }
                }
            };
            Evaluation::direct(holds)
        }
        _ => unreachable!("existential characterizations handled above"),
    })
}

fn core_condition<R: StarRing>(ring: &Ring<R>, f: &Facts<R::Elem>, v: u8) -> Result<Evaluation<R::Elem>> {
    let a = &f.a;
    Ok(match v {
        2 => {
            let c = f.need(Requirement::Core);
            Evaluation::direct(ring.is_hermitian(&ring.mul(c, a)))
        }
        3 => {
            let c = f.need(Requirement::Core);
            Evaluation::direct(gen_inverse::core_inverse(ring, c)?.as_ref() == Some(a))
        }
        4 => {
            let c = f.need(Requirement::Core);
            Evaluation::direct(gen_inverse::moore_penrose(ring, c)?.as_ref() == Some(a))
        }
        5 => {
            let c = f.need(Requirement::Core);
            Evaluation::direct(gen_inverse::group_inverse(ring, c)?.as_ref() == Some(a))
        }
        6 => {
            let m = f.need(Requirement::MoorePenrose);
            Evaluation::direct(gen_inverse::core_inverse(ring, m)?.as_ref() == Some(a))
        }
        7 => {
            let m = f.need(Requirement::MoorePenrose);
            let lhs = gen_inverse::core_inverse(ring, m)?;
            let rhs = match &f.core {
                Some(c) => gen_inverse::moore_penrose(ring, c)?,
                None => None,
            };
            Evaluation::direct(lhs.is_some() && lhs == rhs)
        }
        _ => {
            let c = f.need(Requirement::Core);
            let p = ring.complement(&ring.mul(a, c));
            Evaluation::direct_with(ring.mul(a, &p) == ring.zero(), p)
        }
    })
}

/// Re-evaluate the defining condition on a returned witness. `None` for
/// characterizations without a witness condition.
pub fn recheck_witness<R: StarRing>(
    ring: &Ring<R>,
    f: &Facts<R::Elem>,
    id: CharacterizationId,
    witness: &R::Elem,
) -> Result<Option<bool>> {
    match witness_condition(ring, f, id) {
        Some(pred) => Ok(Some(pred(witness)?)),
        None => Ok(None),
    }
}

/// Per-element verdicts for a set of characterizations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpVerdict<E> {
    pub element: E,
    pub baseline: bool,
    pub verdicts: Vec<(CharacterizationId, Evaluation<E>)>,
    /// Equal to the baseline by definition; disagreements are listed
    /// separately.
    pub consensus: bool,
}

impl<E> EpVerdict<E> {
    /// Applicable verdicts whose value differs from the baseline.
    pub fn disagreements(&self) -> impl Iterator<Item = &(CharacterizationId, Evaluation<E>)> {
        self.verdicts.iter().filter(move |(_, e)| e.outcome.as_bool().is_some_and(|b| b != self.baseline))
    }

    pub fn all_agree(&self) -> bool {
        self.disagreements().next().is_none()
    }
}

pub fn ep_check<R: StarRing>(
    ring: &Ring<R>,
    f: &Facts<R::Elem>,
    ids: &[CharacterizationId],
) -> Result<EpVerdict<R::Elem>> {
    let verdicts = ids.iter().map(|&id| Ok((id, evaluate(ring, f, id)?))).collect::<Result<Vec<_>>>()?;
    Ok(EpVerdict { element: f.a.clone(), baseline: f.ep, verdicts, consensus: f.ep })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SolutionFamily {
    /// Solutions of the three-equation system on the given side.
    ThreeEquations(Side),
    /// Inner or outer inverses with prescribed ideal or annihilator;
    /// items 1 to 4.
    Ideal { side: Side, item: u8 },
    /// Solutions of `a^2x = a, ax = xa, (ax)* = ax`.
    Commuting,
    /// Solutions of the one-sided Hermitian pair `xa^2 = a, (xa)* = xa`
    /// (left) or `a^2x = a, (ax)* = ax` (right).
    TwoConditions(Side),
    /// Solutions of `core a = xa`.
    CoreFactor,
}

impl SolutionFamily {
    pub fn all() -> Vec<SolutionFamily> {
        let mut out = vec![SolutionFamily::ThreeEquations(Side::Left)];
        out.extend((1..=4).map(|item| SolutionFamily::Ideal { side: Side::Left, item }));
        out.push(SolutionFamily::ThreeEquations(Side::Right));
        out.extend((1..=4).map(|item| SolutionFamily::Ideal { side: Side::Right, item }));
        out.push(SolutionFamily::Commuting);
        out.extend(Side::BOTH.map(SolutionFamily::TwoConditions));
        out.push(SolutionFamily::CoreFactor);
        out
    }

    pub fn statement(self) -> Statement {
        match self {
            SolutionFamily::ThreeEquations(Side::Left) => Statement::LeftThreeEquationSolutions,
            SolutionFamily::ThreeEquations(Side::Right) => Statement::RightThreeEquationSolutions,
            SolutionFamily::Ideal { side: Side::Left, .. } => Statement::LeftIdealSolutions,
            SolutionFamily::Ideal { side: Side::Right, .. } => Statement::RightIdealSolutions,
            SolutionFamily::Commuting => Statement::CommutingSolutions,
            SolutionFamily::TwoConditions(_) => Statement::TwoConditionSolutions,
            SolutionFamily::CoreFactor => Statement::CoreFactorSolutions,
        }
    }

    pub fn shape(self) -> Shape {
        match self {
            SolutionFamily::ThreeEquations(Side::Left) | SolutionFamily::Ideal { side: Side::Left, .. } => {
                Shape::RangeToKernel
            }
            SolutionFamily::ThreeEquations(Side::Right) | SolutionFamily::Ideal { side: Side::Right, .. } => {
                Shape::KernelToRange
            }
            SolutionFamily::Commuting => Shape::KernelToKernel,
            SolutionFamily::TwoConditions(Side::Left) | SolutionFamily::CoreFactor => Shape::LeftFree,
            SolutionFamily::TwoConditions(Side::Right) => Shape::RightFree,
        }
    }
}

impl fmt::Display for SolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolutionFamily::ThreeEquations(s) => write!(f, "three-equations-{}", s.name()),
            SolutionFamily::Ideal { side, item } => write!(f, "ideal-{}:{item}", side.name()),
            SolutionFamily::Commuting => f.write_str("commuting"),
            SolutionFamily::TwoConditions(s) => write!(f, "two-conditions-{}", s.name()),
            SolutionFamily::CoreFactor => f.write_str("core-factor"),
        }
    }
}

/// How the free parameter enters; `p` is the projector and `q = 1 - p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    /// `p y q`
    RangeToKernel,
    /// `q y p`
    KernelToRange,
    /// `q y q`
    KernelToKernel,
    /// `y q`
    LeftFree,
    /// `q y`
    RightFree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FreeSide {
    Left,
    Right,
    TwoSided,
}

impl Shape {
    pub fn free_side(self) -> FreeSide {
        match self {
            Shape::LeftFree => FreeSide::Left,
            Shape::RightFree => FreeSide::Right,
            _ => FreeSide::TwoSided,
        }
    }
}

/// A parameterized solution set `anchor + term(y)` together with the
/// defining equations it is claimed to solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSetSpec<E> {
    pub family: SolutionFamily,
    pub element: E,
    /// `a†`, or `(core a)^2` for the core-factor family.
    pub anchor: E,
    /// `aa†`, or `a core a` for the core-factor family.
    pub projector: E,
    /// `core a` for the core-factor family, `a†` otherwise.
    pub target: E,
    pub shape: Shape,
}

/// Requires `a` EP, except the core-factor family which only requires a
/// core inverse.
pub fn solution_set<R: StarRing>(
    ring: &Ring<R>,
    f: &Facts<R::Elem>,
    family: SolutionFamily,
) -> Result<SolutionSetSpec<R::Elem>> {
    let a = &f.a;
    let (anchor, projector, target) = if family == SolutionFamily::CoreFactor {
        let c =
            f.core.as_ref().ok_or_else(|| Error::Precondition(format!("{} has no core inverse", ring.render(a))))?;
        (ring.mul(c, c), ring.mul(a, c), c.clone())
    } else {
        if !f.ep {
            return Err(Error::Precondition(format!("{} is not EP", ring.render(a))));
        }
        let m = f.need(Requirement::MoorePenrose);
        (m.clone(), ring.mul(a, m), m.clone())
    };
    Ok(SolutionSetSpec { family, element: a.clone(), anchor, projector, target, shape: family.shape() })
}

impl<E: Clone + Eq + std::hash::Hash> SolutionSetSpec<E> {
    /// The set member for parameter `y`.
    pub fn member<R: StarRing<Elem = E>>(&self, ring: &Ring<R>, y: &E) -> E {
        let p = &self.projector;
        let q = ring.complement(p);
        let term = match self.shape {
            Shape::RangeToKernel => ring.mul3(p, y, &q),
            Shape::KernelToRange => ring.mul3(&q, y, p),
            Shape::KernelToKernel => ring.mul3(&q, y, &q),
            Shape::LeftFree => ring.mul(y, &q),
            Shape::RightFree => ring.mul(&q, y),
        };
        ring.add(&self.anchor, &term)
    }

    /// The defining equations of the family.
    pub fn contains<R: StarRing<Elem = E>>(&self, ring: &Ring<R>, x: &E) -> Result<bool> {
        use SubsetKind::*;
        let a = &self.element;
        let inner = || ring.mul3(a, x, a) == *a;
        let outer = || ring.mul3(x, a, x) == *x;
        Ok(match self.family {
            SolutionFamily::ThreeEquations(Side::Left) => {
                let xa = ring.mul(x, a);
                ring.is_hermitian(&xa) && ring.mul(&xa, a) == *a && ring.mul3(a, x, x) == *x
            }
            SolutionFamily::ThreeEquations(Side::Right) => {
                let ay = ring.mul(a, x);
                ring.is_hermitian(&ay) && ring.mul(a, &ay) == *a && ring.mul3(x, x, a) == *x
            }
            SolutionFamily::Ideal { side: Side::Left, item } => match item {
                1 => inner() && subset::included(ring, RightIdeal, x, RightIdeal, a)?,
                2 => outer() && subset::equal(ring, RightIdeal, x, RightIdeal, a)?,
                3 => inner() && subset::included(ring, LeftAnnihilator, a, LeftAnnihilator, x)?,
                _ => outer() && subset::equal(ring, LeftAnnihilator, a, LeftAnnihilator, x)?,
            },
            SolutionFamily::Ideal { side: Side::Right, item } => match item {
                1 => inner() && subset::included(ring, LeftIdeal, x, LeftIdeal, a)?,
                2 => outer() && subset::equal(ring, LeftIdeal, x, LeftIdeal, a)?,
                3 => inner() && subset::included(ring, RightAnnihilator, a, RightAnnihilator, x)?,
                _ => outer() && subset::equal(ring, RightAnnihilator, a, RightAnnihilator, x)?,
            },
            SolutionFamily::Commuting => {
                let ax = ring.mul(a, x);
                ring.mul(a, &ax) == *a && ax == ring.mul(x, a) && ring.is_hermitian(&ax)
            }
            SolutionFamily::TwoConditions(Side::Left) => {
                let xa = ring.mul(x, a);
                ring.mul(&xa, a) == *a && ring.is_hermitian(&xa)
            }
            SolutionFamily::TwoConditions(Side::Right) => {
                let ax = ring.mul(a, x);
                ring.mul(a, &ax) == *a && ring.is_hermitian(&ax)
            }
            SolutionFamily::CoreFactor => ring.mul(x, a) == self.target,
        })
    }

    /// The parameterized set over every `y`, in canonical order.
    pub fn generate<R: StarRing<Elem = E>>(&self, ring: &Ring<R>) -> Result<Vec<E>> {
        let view = ring.finite()?;
        let mut seen = fixedbitset::FixedBitSet::with_capacity(view.len());
        for y in view.elements() {
            seen.insert(view.index_of(&self.member(ring, y)));
        }
        Ok(seen.ones().map(|i| view.get(i).clone()).collect())
    }

    /// The defining set, by direct enumeration.
    pub fn defined<R: StarRing<Elem = E>>(&self, ring: &Ring<R>) -> Result<Vec<E>> {
        let mut out = Vec::new();
        for x in ring.elements()? {
            if self.contains(ring, x)? {
                out.push(x.clone());
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetComparison<E> {
    pub generated: usize,
    pub defined: usize,
    /// Generated but failing the defining equations.
    pub extra: Vec<E>,
    /// Satisfying the defining equations but not generated.
    pub missing: Vec<E>,
}

impl<E> SetComparison<E> {
    pub fn equal(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty()
    }
}

/// Double inclusion between the parameterized and the defining set.
pub fn compare_solution_set<R: StarRing>(
    ring: &Ring<R>,
    spec: &SolutionSetSpec<R::Elem>,
) -> Result<SetComparison<R::Elem>> {
    let generated = spec.generate(ring)?;
    let defined = spec.defined(ring)?;
    let extra = generated.iter().filter(|x| !defined.contains(x)).cloned().collect();
    let missing = defined.iter().filter(|x| !generated.contains(x)).cloned().collect();
    Ok(SetComparison { generated: generated.len(), defined: defined.len(), extra, missing })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonReport {
    pub ring: String,
    pub prime: bool,
    pub semiprime: bool,
    pub ep_elements: usize,
    pub claims_checked: usize,
    pub violations: Vec<String>,
}

/// In a prime ring the three-equation and ideal solution sets of an EP
/// element are singletons exactly when `a = 0` or `a` is a unit; in a
/// semiprime ring the commuting solution set is a singleton exactly when
/// `a` is a unit. Every EP element of the ring is checked.
pub fn singleton_claims<R: StarRing>(ring: &Ring<R>) -> Result<SingletonReport> {
    let primality = ring.primality();
    if !primality.is_semiprime() {
        return Err(Error::Precondition(format!("{} is not flagged prime or semiprime", ring.descriptor())));
    }
    let mut report = SingletonReport {
        ring: ring.descriptor(),
        prime: primality.is_prime(),
        semiprime: true,
        ep_elements: 0,
        claims_checked: 0,
        violations: Vec::new(),
    };
    let zero = ring.zero();
    for a in ring.elements()? {
        let f = Facts::new(ring, a)?;
        if !f.ep {
            continue;
        }
        report.ep_elements += 1;
        let unit = ring.is_unit(a);
        let mut families = Vec::new();
        if report.prime {
            families.extend(
                SolutionFamily::all()
                    .into_iter()
                    .filter(|fam| matches!(fam, SolutionFamily::ThreeEquations(_) | SolutionFamily::Ideal { .. })),
            );
        }
        families.push(SolutionFamily::Commuting);
        for family in families {
            let set = solution_set(ring, &f, family)?.defined(ring)?;
            let expected = if family == SolutionFamily::Commuting { unit } else { unit || *a == zero };
            let singleton = set.len() == 1;
            report.claims_checked += 1;
            if singleton != expected || (singleton && set[0] != f.target_mp()) {
                report.violations.push(format!(
                    "{family} for {}: {} solutions, expected singleton = {expected}",
                    ring.render(a),
                    set.len()
                ));
            }
        }
    }
    Ok(report)
}

impl<E: Clone> Facts<E> {
    fn target_mp(&self) -> E {
        self.mp.clone().expect("EP elements have a Moore-Penrose inverse")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitConstruction<E> {
    /// `(a^#)^2 + 1 - aa^#`.
    pub u: E,
    /// `a^2 + 1 - aa^#`.
    pub inverse: E,
    pub checks: Vec<Certificate>,
}

impl<E> UnitConstruction<E> {
    pub fn holds(&self) -> bool {
        gen_inverse::all_hold(&self.checks)
    }
}

/// For EP `a`, build the unit `u` with `ua = core a = a†`.
pub fn unit_construction<R: StarRing>(
    ring: &Ring<R>,
    f: &Facts<R::Elem>,
    target: InverseKind,
) -> Result<UnitConstruction<R::Elem>> {
    let a = &f.a;
    if !f.ep {
        return Err(Error::Precondition(format!("{} is not EP", ring.render(a))));
    }
    let g = f.need(Requirement::Group);
    let aag = ring.complement(&ring.mul(a, g));
    let u = ring.add(&ring.mul(g, g), &aag);
    let inverse = ring.add(&ring.mul(a, a), &aag);
    let one = ring.one();
    let ua = ring.mul(&u, a);
    let check = |equation: &str, holds: bool| Certificate { equation: equation.into(), holds };
    let mut checks = vec![
        check("u(a^2+1-aa^#)=1", ring.mul(&u, &inverse) == one),
        check("(a^2+1-aa^#)u=1", ring.mul(&inverse, &u) == one),
    ];
    match target {
        InverseKind::Core => checks.push(check("ua=core(a)", f.core.as_ref() == Some(&ua))),
        InverseKind::MoorePenrose => checks.push(check("ua=a†", f.mp.as_ref() == Some(&ua))),
        other => return Err(Error::InvalidSpec(format!("unit construction targets core or mp, not {other}"))),
    }
    Ok(UnitConstruction { u, inverse, checks })
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

    #[test]
    fn ids_round_trip_through_text() {
        for id in CharacterizationId::all(MAX_N) {
            assert_eq!(id.to_string().parse::<CharacterizationId>().unwrap(), id, "{id}");
        }
        assert!("ideal-conditions-left:1".parse::<CharacterizationId>().is_err());
        assert!("core-conditions".parse::<CharacterizationId>().is_err());
        assert!("no-such-thing".parse::<CharacterizationId>().is_err());
        assert!(matches!(
            C::IdealConditions { side: Side::Left, variant: 10 }.validate(),
            Err(Error::UnknownVariant { .. })
        ));
    }

    #[test]
    fn statements_are_covered_or_structural() {
        let ids = CharacterizationId::all(3);
        let covered: std::collections::BTreeSet<_> = ids.iter().map(|i| i.statement()).collect();
        assert!(covered.len() >= 20);
    }

    #[test]
    fn golden_matrix_is_not_ep() {
        let r = q2();
        let a = r.from_scalar_rows(&[&[0, 1], &[0, 1]]).unwrap();
        let f = Facts::new(&r, &a).unwrap();
        assert!(!f.ep);
        let v8 = evaluate(&r, &f, C::CoreConditions(8)).unwrap();
        assert_eq!(v8.outcome, Outcome::False);
        assert_eq!(v8.witness, Some(r.parse_element("[[1/2,-1/2],[-1/2,1/2]]").unwrap()));
        assert_eq!(evaluate(&r, &f, C::CoreCommutator).unwrap().outcome, Outcome::False);
        let inc = evaluate(&r, &f, C::Inclusions { requirement: Requirement::Group, variant: 1 }).unwrap();
        assert_eq!(inc.outcome, Outcome::False);
        let verdict = ep_check(&r, &f, &CharacterizationId::all(3)).unwrap();
        assert!(verdict.all_agree(), "{:?}", verdict.disagreements().collect::<Vec<_>>());
    }

    #[test]
    fn identity_and_zero() {
        let r = q2();
        let f = Facts::new(&r, &r.one()).unwrap();
        let v = ep_check(&r, &f, &CharacterizationId::all(3)).unwrap();
        assert!(v.baseline);
        assert!(v.verdicts.iter().all(|(_, e)| e.outcome == Outcome::True));

        let f = Facts::new(&r, &r.zero()).unwrap();
        for side in Side::BOTH {
            let e = evaluate(&r, &f, C::ThreeEquations(side)).unwrap();
            assert_eq!((e.outcome, e.witness), (Outcome::True, Some(r.zero())));
        }
        let e = evaluate(&r, &f, C::IdealConditions { side: Side::Left, variant: 2 }).unwrap();
        assert_eq!(e.witness, Some(r.zero()));
    }

    #[test]
    fn nilpotent_is_not_ep() {
        let r = q2();
        let n = r.from_scalar_rows(&[&[0, 1], &[0, 0]]).unwrap();
        let f = Facts::new(&r, &n).unwrap();
        assert_eq!(evaluate(&r, &f, C::TwoConditions(Side::Left)).unwrap(), Evaluation::direct(false));
        let e = evaluate(&r, &f, C::PowerRange { side: Side::Right, variant: 2 }).unwrap();
        assert_eq!(e.outcome, Outcome::False);
        let e = evaluate(&r, &f, C::ThreeEquations(Side::Left)).unwrap();
        assert_eq!(e.provenance, Provenance::DerivedFromTheorem);
    }

    #[test]
    fn zmod6_two() {
        let r = Ring::new(ModularIntegers::new(6).unwrap());
        let f = Facts::new(&r, &2).unwrap();
        assert!(f.ep);
        let v = ep_check(&r, &f, &CharacterizationId::all(3)).unwrap();
        assert!(v.verdicts.iter().all(|(_, e)| e.outcome == Outcome::True));
        let u = unit_construction(&r, &f, InverseKind::MoorePenrose).unwrap();
        assert_eq!(u.u, 1);
        assert!(u.holds());
    }

    #[test]
    fn diagonal_unit_construction() {
        let r = q2();
        let a = r.from_scalar_rows(&[&[2, 0], &[0, 0]]).unwrap();
        let f = Facts::new(&r, &a).unwrap();
        let u = unit_construction(&r, &f, InverseKind::Core).unwrap();
        assert_eq!(u.u, r.parse_element("[[1/4,0],[0,1]]").unwrap());
        assert!(u.holds());
        let golden = r.from_scalar_rows(&[&[0, 1], &[0, 1]]).unwrap();
        let g = Facts::new(&r, &golden).unwrap();
        assert!(matches!(unit_construction(&r, &g, InverseKind::Core), Err(Error::Precondition(_))));
    }

    #[test]
    fn solution_sets_on_gf2() {
        let r = Ring::new(MatrixRing::new(2, Modular::new(2).unwrap(), Involution::Transpose).unwrap());
        for a in r.elements().unwrap() {
            let f = Facts::new(&r, a).unwrap();
            for family in SolutionFamily::all() {
                match solution_set(&r, &f, family) {
                    Ok(spec) => {
                        let cmp = compare_solution_set(&r, &spec).unwrap();
                        if f.ep {
                            assert!(cmp.equal(), "{family} for {}: {cmp:?}", r.render(a));
                        }
                    }
                    Err(Error::Precondition(_)) => assert!(!f.ep),
                    Err(e) => panic!("{e}"),
                }
            }
        }
        let zero_spec =
            solution_set(&r, &Facts::new(&r, &r.zero()).unwrap(), SolutionFamily::ThreeEquations(Side::Left)).unwrap();
        assert_eq!(zero_spec.generate(&r).unwrap(), vec![r.zero()]);
    }

    #[test]
    fn singletons_need_a_flagged_ring() {
        let r = Ring::new(ModularIntegers::new(4).unwrap());
        assert!(matches!(singleton_claims(&r), Err(Error::Precondition(_))));
        let r = Ring::new(MatrixRing::new(2, Modular::new(2).unwrap(), Involution::Transpose).unwrap());
        let rep = singleton_claims(&r).unwrap();
        assert!(rep.prime && rep.violations.is_empty(), "{rep:?}");
    }
}
