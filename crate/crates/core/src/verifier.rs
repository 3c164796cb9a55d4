//! Corpus construction and the theorem suite.
//!
//! A run evaluates every requested characterization on every corpus element
//! against the EP definition, then runs structural identities (inverse
//! certificates, uniqueness, decompositions, solution sets, dualities).
//! Disagreements are recorded as counterexamples, never suppressed.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ep_oracle::{self, CharacterizationId, Facts, Outcome, Provenance, SolutionFamily, Statement};
use crate::error::{Error, Result};
use crate::gen_inverse::{self, DecompositionKind, InverseKind};
use crate::matrix::Matrix;
use crate::realization::Ring;
use crate::ring::{MatrixRing, ModularIntegers, StarRing};
use crate::scalar::Scalars;
use crate::subset::{self, SubsetKind};

pub const SCHEMA_VERSION: u32 = 1;

/// Construction used for a random corpus element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Structure {
    FullRank,
    RankDeficient,
    Nilpotent,
    Hermitian,
    Idempotent,
    Ep,
    Projection,
}

impl Structure {
    /// Random corpora cycle through these in order.
    pub const CYCLE: [Structure; 7] = [
        Structure::FullRank,
        Structure::RankDeficient,
        Structure::Nilpotent,
        Structure::Hermitian,
        Structure::Idempotent,
        Structure::Ep,
        Structure::Projection,
    ];
}

/// Rings that can draw structured random elements.
pub trait RandomElements: StarRing {
    fn random_element(&self, rng: &mut ChaCha8Rng, structure: Structure) -> Self::Elem;
}

impl RandomElements for ModularIntegers {
    fn random_element(&self, rng: &mut ChaCha8Rng, _structure: Structure) -> u64 {
        rng.gen_range(0..self.modulus())
    }
}

impl<S: Scalars> MatrixRing<S> {
    fn random_entry(&self, rng: &mut ChaCha8Rng) -> S::Value {
        let s = self.scalars();
        let re = s.from_i64(rng.gen_range(-3..=3));
        if s.conj_is_trivial() {
            return re;
        }
        let im = rng.gen_range(-2..=2);
        let i = s.parse("i").expect("scalars with a nontrivial conjugation parse i");
        s.add(&re, &s.mul(&s.from_i64(im), &i))
    }

    fn random_matrix(&self, rng: &mut ChaCha8Rng) -> Matrix<S::Value> {
        let k = self.dim();
        Matrix::from_vec(k, k, (0..k * k).map(|_| self.random_entry(rng)).collect())
    }

    /// A random unit and its inverse; the identity if none turns up quickly.
    fn random_unit(&self, rng: &mut ChaCha8Rng) -> (Matrix<S::Value>, Matrix<S::Value>) {
        for _ in 0..64 {
            let b = self.random_matrix(rng);
            if let Some(inv) = self.unit_inverse(&b) {
                return (b, inv);
            }
        }
        (self.one(), self.one())
    }

    fn rank_mask(&self, r: usize) -> Matrix<S::Value> {
        let s = self.scalars();
        let mut d = Matrix::zeros(s, self.dim(), self.dim());
        for i in 0..r {
            d.set(i, i, s.one());
        }
        d
    }

    fn random_rank(&self, rng: &mut ChaCha8Rng) -> usize {
        let k = self.dim();
        if k == 1 {
            rng.gen_range(0..=1)
        } else {
            rng.gen_range(1..k)
        }
    }
}

impl<S: Scalars> RandomElements for MatrixRing<S> {
    fn random_element(&self, rng: &mut ChaCha8Rng, structure: Structure) -> Matrix<S::Value> {
        let s = self.scalars();
        let k = self.dim();
        match structure {
            Structure::FullRank => self.random_unit(rng).0,
            Structure::RankDeficient => {
                let d = self.rank_mask(self.random_rank(rng));
                let (b, _) = self.random_unit(rng);
                let (c, _) = self.random_unit(rng);
                self.mul(&self.mul(&b, &d), &c)
            }
            Structure::Nilpotent => {
                let mut n = Matrix::zeros(s, k, k);
                for i in 0..k {
                    for j in i + 1..k {
                        n.set(i, j, self.random_entry(rng));
                    }
                }
                let (b, binv) = self.random_unit(rng);
                self.mul(&self.mul(&b, &n), &binv)
            }
            Structure::Hermitian => {
                let m = self.random_matrix(rng);
                self.add(&m, &self.star(&m))
            }
            Structure::Idempotent => {
                let d = self.rank_mask(self.random_rank(rng));
                let (b, binv) = self.random_unit(rng);
                self.mul(&self.mul(&b, &d), &binv)
            }
            Structure::Ep => {
                // F M F* with F of full column rank and M invertible on the range
                let f = self.mul(&self.random_unit(rng).0, &self.rank_mask(self.random_rank(rng)));
                let mut m = Matrix::zeros(s, k, k);
                for i in 0..k {
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    m.set(i, i, s.from_i64(sign * rng.gen_range(1..=2)));
                    for j in 0..i {
                        m.set(i, j, self.random_entry(rng));
                    }
                }
                if m.determinant(s) == s.zero() {
                    m = self.one();
                }
                self.mul(&self.mul(&f, &m), &self.star(&f))
            }
            Structure::Projection => {
                let f = self.mul(&self.random_unit(rng).0, &self.rank_mask(self.random_rank(rng)));
                match self.linear().map(|lin| lin.moore_penrose(&f)) {
                    Some(Ok(fd)) => self.mul(&f, &fd),
                    _ => self.random_element(rng, Structure::Idempotent),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum CorpusSource {
    Exhaustive,
    Random { seed: u64, count: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corpus<E> {
    pub ring: String,
    pub source: CorpusSource,
    pub elements: Vec<E>,
    /// Construction per element (random corpora only).
    pub structures: Vec<Structure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusDescriptor {
    pub ring: String,
    #[serde(flatten)]
    pub source: CorpusSource,
    pub elements: usize,
}

impl<E> Corpus<E> {
    pub fn descriptor(&self) -> CorpusDescriptor {
        CorpusDescriptor { ring: self.ring.clone(), source: self.source.clone(), elements: self.elements.len() }
    }
}

pub fn build_corpus<R: RandomElements>(ring: &Ring<R>, source: CorpusSource) -> Result<Corpus<R::Elem>> {
    let (elements, structures) = match &source {
        CorpusSource::Exhaustive => (ring.elements()?.to_vec(), Vec::new()),
        CorpusSource::Random { seed, count } => {
            if *count == 0 {
                return Err(Error::InvalidSpec("random corpus needs count >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let structures: Vec<_> = (0..*count).map(|i| Structure::CYCLE[i % Structure::CYCLE.len()]).collect();
            let elements = structures.iter().map(|st| ring.random_element(&mut rng, *st)).collect();
            (elements, structures)
        }
    };
    Ok(Corpus { ring: ring.descriptor(), source, elements, structures })
}

/// A structural identity run alongside the characterizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StructuralCheck {
    /// Every computed inverse satisfies its defining equations.
    Certificates,
    /// At most one solution per unique inverse kind (finite rings).
    Uniqueness,
    /// Closed forms and exhaustive search agree (finite rings over a field).
    ClosedFormVsSearch,
    /// `a^# = (core a)^2 a`, `core(core a) = (core a)† = (core a)^# = a^2 core a`,
    /// and `core(a†) = (core a · a)* a`.
    CoreIdentities,
    Decomposition(DecompositionKind),
    /// `a` is EP iff `a*` is EP.
    StarSymmetry,
    /// `(core a)*` is the dual core inverse of `a*`.
    StarDuality,
    /// `aR ⊆ bR` implies `°b ⊆ °a`, with the converse for regular `b`; and
    /// the mirrored statement.
    AnnihilatorDuality,
    SolutionSet(SolutionFamily),
    UnitConstruction,
    /// EP implies n-EP for every `n` up to the bound.
    NEpClosure,
    /// Returned witnesses satisfy their defining conditions.
    WitnessValidity,
    SingletonClaims,
}

impl StructuralCheck {
    pub fn name(self) -> String {
        match self {
            StructuralCheck::Certificates => "certificates".into(),
            StructuralCheck::Uniqueness => "uniqueness".into(),
            StructuralCheck::ClosedFormVsSearch => "closed-form-vs-search".into(),
            StructuralCheck::CoreIdentities => "core-identities".into(),
            StructuralCheck::Decomposition(k) => format!(
                "decomposition-{}",
                match k {
                    DecompositionKind::Group => "group",
                    DecompositionKind::Ep => "ep",
                    DecompositionKind::Core => "core",
                }
            ),
            StructuralCheck::StarSymmetry => "star-symmetry".into(),
            StructuralCheck::StarDuality => "star-duality".into(),
            StructuralCheck::AnnihilatorDuality => "annihilator-duality".into(),
            StructuralCheck::SolutionSet(f) => format!("solution-set/{f}"),
            StructuralCheck::UnitConstruction => "unit-construction".into(),
            StructuralCheck::NEpClosure => "n-ep-closure".into(),
            StructuralCheck::WitnessValidity => "witness-validity".into(),
            StructuralCheck::SingletonClaims => "singleton-claims".into(),
        }
    }

    pub fn statements(self) -> Vec<Statement> {
        use Statement as S;
        match self {
            StructuralCheck::Certificates | StructuralCheck::Uniqueness | StructuralCheck::ClosedFormVsSearch => {
                vec![S::CoreFiveEquations]
            }
            StructuralCheck::CoreIdentities => vec![S::CoreIdentities],
            StructuralCheck::Decomposition(DecompositionKind::Group) => vec![S::IdempotentDecomposition],
            StructuralCheck::Decomposition(DecompositionKind::Ep) => vec![S::ProjectionDecomposition],
            StructuralCheck::Decomposition(DecompositionKind::Core) => vec![S::CoreProjectionDecomposition],
            StructuralCheck::StarSymmetry | StructuralCheck::StarDuality => vec![S::StarSymmetry],
            StructuralCheck::AnnihilatorDuality => vec![S::AnnihilatorDuality],
            StructuralCheck::SolutionSet(f) => vec![f.statement()],
            StructuralCheck::UnitConstruction => vec![S::CoreUnitFactor, S::MpUnitFactor],
            StructuralCheck::NEpClosure => vec![S::NEp],
            StructuralCheck::WitnessValidity => vec![],
            StructuralCheck::SingletonClaims => vec![
                S::LeftThreeEquationSolutions,
                S::RightThreeEquationSolutions,
                S::LeftIdealSolutions,
                S::RightIdealSolutions,
                S::CommutingSolutions,
            ],
        }
    }

    pub fn all() -> Vec<StructuralCheck> {
        let mut out = vec![
            StructuralCheck::Certificates,
            StructuralCheck::Uniqueness,
            StructuralCheck::ClosedFormVsSearch,
            StructuralCheck::CoreIdentities,
        ];
        out.extend(
            [DecompositionKind::Group, DecompositionKind::Ep, DecompositionKind::Core]
                .map(StructuralCheck::Decomposition),
        );
        out.extend([StructuralCheck::StarSymmetry, StructuralCheck::StarDuality, StructuralCheck::AnnihilatorDuality]);
        out.extend(SolutionFamily::all().into_iter().map(StructuralCheck::SolutionSet));
        out.extend([
            StructuralCheck::UnitConstruction,
            StructuralCheck::NEpClosure,
            StructuralCheck::WitnessValidity,
            StructuralCheck::SingletonClaims,
        ]);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Suite {
    /// Every characterization plus every structural check.
    All,
    /// Only the listed characterizations.
    Only(Vec<CharacterizationId>),
}

impl Suite {
    /// `all`, or a comma-separated list of characterization ids.
    pub fn parse(text: &str) -> Result<Suite> {
        if text.trim() == "all" {
            return Ok(Suite::All);
        }
        let ids = text.split(',').map(|s| s.trim().parse::<CharacterizationId>()).collect::<Result<Vec<_>>>()?;
        if ids.is_empty() {
            return Err(Error::Parse("empty suite".into()));
        }
        Ok(Suite::Only(ids))
    }

    fn label(&self) -> String {
        match self {
            Suite::All => "all".into(),
            Suite::Only(ids) => ids.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub agree: u64,
    pub disagree: u64,
    pub inapplicable: u64,
    /// Negative verdicts that rest on the verified equivalence itself.
    pub derived: u64,
}

impl Tally {
    fn absorb(&mut self, other: &Tally) {
        self.agree += other.agree;
        self.disagree += other.disagree;
        self.inapplicable += other.inapplicable;
        self.derived += other.derived;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    pub element: String,
    pub check: String,
    pub expected: String,
    pub got: String,
}

/// Findings recorded without any claim attached.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub description: String,
    pub count: u64,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema_version: u32,
    pub suite: String,
    pub corpus: CorpusDescriptor,
    pub ep_elements: u64,
    pub characterizations: BTreeMap<String, Tally>,
    pub structural: BTreeMap<String, Tally>,
    pub totals: Tally,
    pub counterexamples: Vec<Counterexample>,
    pub observations: Vec<Observation>,
}

impl TheoremReport {
    pub fn disagreements(&self) -> u64 {
        self.totals.disagree
    }

    /// Process exit status: nonzero iff any disagreement was found.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.disagreements() > 0)
    }

    fn recompute_totals(&mut self) {
        let mut t = Tally::default();
        for v in self.characterizations.values().chain(self.structural.values()) {
            t.absorb(v);
        }
        self.totals = t;
    }

    /// Combine reports over disjoint shards of one corpus. Associative and
    /// independent of shard order.
    pub fn merge(mut self, other: &TheoremReport) -> Result<TheoremReport> {
        if self.corpus.ring != other.corpus.ring || self.suite != other.suite {
            return Err(Error::Incompatible("reports cover different rings or suites".into()));
        }
        for (map, theirs) in
            [(&mut self.characterizations, &other.characterizations), (&mut self.structural, &other.structural)]
        {
            for (k, v) in theirs {
                map.entry(k.clone()).or_default().absorb(v);
            }
        }
        self.corpus.elements += other.corpus.elements;
        self.ep_elements += other.ep_elements;
        self.counterexamples.extend(other.counterexamples.iter().cloned());
        self.counterexamples.sort();
        for obs in &other.observations {
            match self.observations.iter_mut().find(|o| o.name == obs.name) {
                Some(mine) => {
                    mine.count += obs.count;
                    mine.examples.extend(obs.examples.iter().cloned());
                    mine.examples.sort();
                    mine.examples.truncate(MAX_EXAMPLES);
                }
                None => self.observations.push(obs.clone()),
            }
        }
        self.recompute_totals();
        Ok(self)
    }
}

const MAX_EXAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOptions {
    pub suite: Suite,
    /// Largest `n` for the n-EP family.
    pub n_max: u8,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { suite: Suite::All, n_max: 3 }
    }
}

struct Recorder<'r, R: StarRing> {
    ring: &'r Ring<R>,
    characterizations: BTreeMap<String, Tally>,
    structural: BTreeMap<String, Tally>,
    counterexamples: Vec<Counterexample>,
}

impl<'r, R: StarRing> Recorder<'r, R> {
    fn check(&mut self, check: StructuralCheck, a: &R::Elem, holds: Option<bool>, detail: impl FnOnce() -> String) {
        let t = self.structural.entry(check.name()).or_default();
        match holds {
            None => t.inapplicable += 1,
            Some(true) => t.agree += 1,
            Some(false) => {
                t.disagree += 1;
                self.counterexamples.push(Counterexample {
                    element: self.ring.render(a),
                    check: check.name(),
                    expected: "holds".into(),
                    got: detail(),
                });
            }
        }
    }
}

fn render_opt<R: StarRing>(ring: &Ring<R>, x: &Option<R::Elem>) -> String {
    x.as_ref().map_or_else(|| "none".into(), |v| ring.render(v))
}

pub fn run_suite<R: StarRing>(
    ring: &Ring<R>,
    corpus: &Corpus<R::Elem>,
    options: &SuiteOptions,
) -> Result<TheoremReport> {
    let ids = match &options.suite {
        Suite::All => CharacterizationId::all(options.n_max),
        Suite::Only(ids) => ids.iter().map(|i| i.validate()).collect::<Result<Vec<_>>>()?,
    };
    let structural = options.suite == Suite::All;
    let mut rec = Recorder {
        ring,
        characterizations: ids.iter().map(|i| (i.to_string(), Tally::default())).collect(),
        structural: if structural {
            StructuralCheck::all().into_iter().map(|c| (c.name(), Tally::default())).collect()
        } else {
            BTreeMap::new()
        },
        counterexamples: Vec::new(),
    };
    let mut ep_elements = 0;
    let mut lone_commutator = Observation {
        name: "mp-hermitian-commutator-alone".into(),
        description: "a† exists, [a†a, a†] = 0, yet a is not EP".into(),
        count: 0,
        examples: Vec::new(),
    };

    for a in &corpus.elements {
        let facts = Facts::new(ring, a)?;
        if facts.ep {
            ep_elements += 1;
        }
        let verdict = ep_oracle::ep_check(ring, &facts, &ids)?;
        for (id, eval) in &verdict.verdicts {
            let t = rec.characterizations.entry(id.to_string()).or_default();
            match eval.outcome.as_bool() {
                None => t.inapplicable += 1,
                Some(v) if v != verdict.baseline => {
                    t.disagree += 1;
                    rec.counterexamples.push(Counterexample {
                        element: ring.render(a),
                        check: id.to_string(),
                        expected: verdict.baseline.to_string(),
                        got: v.to_string(),
                    });
                }
                Some(_) if eval.provenance == Provenance::DerivedFromTheorem => t.derived += 1,
                Some(_) => t.agree += 1,
            }
        }
        if let Some(m) = &facts.mp {
            let ma = ring.mul(m, a);
            if !facts.ep && ring.commutator(&ma, m) == ring.zero() {
                lone_commutator.count += 1;
                if lone_commutator.examples.len() < MAX_EXAMPLES {
                    lone_commutator.examples.push(ring.render(a));
                }
            }
        }
        if structural {
            structural_checks(&mut rec, ring, &facts, &verdict, options.n_max)?;
        }
    }

    let whole_ring = corpus.source == CorpusSource::Exhaustive
        && ring.elements().is_ok_and(|all| all.len() == corpus.elements.len());
    if structural && whole_ring {
        if ring.primality().is_semiprime() {
            let report = ep_oracle::singleton_claims(ring)?;
            let t = rec.structural.entry(StructuralCheck::SingletonClaims.name()).or_default();
            t.agree += (report.claims_checked - report.violations.len()) as u64;
            t.disagree += report.violations.len() as u64;
            for v in report.violations {
                rec.counterexamples.push(Counterexample {
                    element: String::new(),
                    check: StructuralCheck::SingletonClaims.name(),
                    expected: "singleton iff the stated condition".into(),
                    got: v,
                });
            }
        } else {
            rec.structural.entry(StructuralCheck::SingletonClaims.name()).or_default().inapplicable += 1;
        }
    }

    rec.counterexamples.sort();
    let mut report = TheoremReport {
        schema_version: SCHEMA_VERSION,
        suite: options.suite.label(),
        corpus: corpus.descriptor(),
        ep_elements,
        characterizations: rec.characterizations,
        structural: rec.structural,
        totals: Tally::default(),
        counterexamples: rec.counterexamples,
        observations: vec![lone_commutator],
    };
    report.recompute_totals();
    Ok(report)
}

fn structural_checks<R: StarRing>(
    rec: &mut Recorder<'_, R>,
    ring: &Ring<R>,
    f: &Facts<R::Elem>,
    verdict: &ep_oracle::EpVerdict<R::Elem>,
    n_max: u8,
) -> Result<()> {
    use StructuralCheck as K;
    let a = &f.a;
    let finite = ring.is_enumerable();

    let bundle = gen_inverse::inverse_bundle(ring, a)?;
    let failed: Vec<String> = bundle
        .certificates
        .iter()
        .flat_map(|(k, cs)| cs.iter().filter(|c| !c.holds).map(move |c| format!("{k}: {}", c.equation)))
        .collect();
    rec.check(K::Certificates, a, Some(failed.is_empty()), || failed.join("; "));

    if finite {
        let mut multi = Vec::new();
        for kind in [InverseKind::MoorePenrose, InverseKind::Group, InverseKind::Core, InverseKind::DualCore] {
            let n = gen_inverse::all_solutions(ring, a, kind)?.len();
            if n > 1 {
                multi.push(format!("{kind}: {n} solutions"));
            }
        }
        rec.check(K::Uniqueness, a, Some(multi.is_empty()), || multi.join("; "));

        let holds = if ring.linear().is_some() {
            let mut diffs = Vec::new();
            for kind in [InverseKind::MoorePenrose, InverseKind::Group, InverseKind::Core] {
                let searched = gen_inverse::search(ring, a, kind)?;
                let closed = gen_inverse::closed_form(ring, a, kind)?.ok();
                if searched != closed {
                    diffs.push(format!(
                        "{kind}: search {} vs closed form {}",
                        render_opt(ring, &searched),
                        render_opt(ring, &closed)
                    ));
                }
            }
            Some(diffs)
        } else {
            None
        };
        let ok = holds.as_ref().map(|d| d.is_empty());
        rec.check(K::ClosedFormVsSearch, a, ok, || holds.unwrap_or_default().join("; "));
    } else {
        rec.check(K::Uniqueness, a, None, String::new);
        rec.check(K::ClosedFormVsSearch, a, None, String::new);
    }

    match &f.core {
        Some(c) => {
            let a2c = ring.mul3(a, a, c);
            let mut bad = Vec::new();
            if f.group.as_ref() != Some(&ring.mul3(c, c, a)) {
                bad.push("a^# = (core a)^2 a".to_string());
            }
            if gen_inverse::core_inverse(ring, c)?.as_ref() != Some(&a2c) {
                bad.push("core(core a) = a^2 core a".into());
            }
            if gen_inverse::moore_penrose(ring, c)?.as_ref() != Some(&a2c) {
                bad.push("(core a)† = a^2 core a".into());
            }
            if gen_inverse::group_inverse(ring, c)?.as_ref() != Some(&a2c) {
                bad.push("(core a)^# = a^2 core a".into());
            }
            if !ep_oracle::ep_baseline(ring, c)? {
                bad.push("core a is EP".into());
            }
            if let Some(m) = &f.mp {
                let expected = ring.mul(&ring.star(&ring.mul(c, a)), a);
                if gen_inverse::core_inverse(ring, m)?.as_ref() != Some(&expected) {
                    bad.push("core(a†) = (core a · a)* a".into());
                }
            }
            rec.check(K::CoreIdentities, a, Some(bad.is_empty()), || bad.join("; "));
        }
        None => rec.check(K::CoreIdentities, a, None, String::new),
    }

    for kind in [DecompositionKind::Group, DecompositionKind::Ep, DecompositionKind::Core] {
        let available = match kind {
            DecompositionKind::Group => f.group.is_some(),
            DecompositionKind::Ep => f.ep,
            DecompositionKind::Core => f.core.is_some(),
        };
        let mut bad = Vec::new();
        let mut expected_p = None;
        if available {
            let d = gen_inverse::decomposition(ring, a, kind)?;
            bad.extend(d.checks.iter().filter(|c| !c.holds).map(|c| c.equation.clone()));
            expected_p = Some(d.p);
        } else if !matches!(gen_inverse::decomposition(ring, a, kind), Err(Error::Precondition(_))) {
            bad.push("decomposition built without its inverse".into());
        }
        if finite {
            let found = gen_inverse::decomposition_search(ring, a, kind)?;
            let consistent = match (&expected_p, kind) {
                (None, _) => found.is_empty(),
                // the core projection is unique; group and ep splittings must contain 1 - a·inverse
                (Some(p), DecompositionKind::Core) => found == vec![p.clone()],
                (Some(p), _) => found.contains(p),
            };
            if !consistent {
                bad.push(format!("search found {} splitting elements", found.len()));
            }
        }
        let holds = if available || finite { Some(bad.is_empty()) } else { None };
        rec.check(K::Decomposition(kind), a, holds, || bad.join("; "));
    }

    let star_facts = Facts::new(ring, &f.star)?;
    rec.check(K::StarSymmetry, a, Some(star_facts.ep == f.ep), || {
        format!("EP(a) = {}, EP(a*) = {}", f.ep, star_facts.ep)
    });

    let dual_expected = f.core.as_ref().map(|c| ring.star(c));
    let dual_ok = match &dual_expected {
        Some(d) => gen_inverse::is_inverse(ring, &f.star, d, InverseKind::DualCore),
        None => true,
    } && (!finite || gen_inverse::search(ring, &f.star, InverseKind::DualCore)? == dual_expected);
    rec.check(K::StarDuality, a, Some(dual_ok), || {
        format!("(core a)* = {} is not the dual core inverse of a*", render_opt(ring, &dual_expected))
    });

    let partners: Vec<R::Elem> = if finite {
        ring.elements()?.to_vec()
    } else {
        let mut p = vec![ring.zero(), ring.one(), f.star.clone(), ring.mul(a, a)];
        p.extend(f.mp.iter().cloned());
        p
    };
    let mut bad = Vec::new();
    for b in &partners {
        let regular = if finite { gen_inverse::search(ring, b, InverseKind::One)?.is_some() } else { true };
        use SubsetKind::*;
        for (ideal, ann_b, ann_a) in [
            (subset::included(ring, RightIdeal, a, RightIdeal, b)?, LeftAnnihilator, LeftAnnihilator),
            (subset::included(ring, LeftIdeal, a, LeftIdeal, b)?, RightAnnihilator, RightAnnihilator),
        ] {
            let ann = subset::included(ring, ann_b, b, ann_a, a)?;
            if (ideal && !ann) || (regular && ann && !ideal) {
                bad.push(format!("b = {}", ring.render(b)));
            }
        }
    }
    rec.check(K::AnnihilatorDuality, a, Some(bad.is_empty()), || bad.join("; "));

    for family in SolutionFamily::all() {
        let applicable = if family == SolutionFamily::CoreFactor { f.core.is_some() } else { f.ep };
        if !applicable {
            rec.check(K::SolutionSet(family), a, None, String::new);
            continue;
        }
        let spec = ep_oracle::solution_set(ring, f, family)?;
        if finite {
            let cmp = ep_oracle::compare_solution_set(ring, &spec)?;
            // without EP only the inclusion of the defining set is claimed
            let holds = if f.ep { cmp.equal() } else { cmp.missing.is_empty() };
            rec.check(K::SolutionSet(family), a, Some(holds), || {
                format!(
                    "generated {}, defined {}, extra {}, missing {}",
                    cmp.generated,
                    cmp.defined,
                    cmp.extra.len(),
                    cmp.missing.len()
                )
            });
        } else if f.ep {
            let mut bad = Vec::new();
            for y in [ring.zero(), ring.one(), a.clone(), f.star.clone()] {
                let x = spec.member(ring, &y);
                if !spec.contains(ring, &x)? {
                    bad.push(ring.render(&x));
                }
            }
            rec.check(K::SolutionSet(family), a, Some(bad.is_empty()), || bad.join("; "));
        } else {
            rec.check(K::SolutionSet(family), a, None, String::new);
        }
    }

    if f.ep {
        let mut bad = Vec::new();
        for target in [InverseKind::Core, InverseKind::MoorePenrose] {
            let uc = ep_oracle::unit_construction(ring, f, target)?;
            bad.extend(uc.checks.iter().filter(|c| !c.holds).map(|c| c.equation.clone()));
        }
        rec.check(K::UnitConstruction, a, Some(bad.is_empty()), || bad.join("; "));
        let failing: Vec<u8> = (1..=n_max).filter(|&n| ep_oracle::n_ep(ring, f, n).outcome != Outcome::True).collect();
        rec.check(K::NEpClosure, a, Some(failing.is_empty()), || format!("fails for n = {failing:?}"));
    } else {
        rec.check(K::UnitConstruction, a, None, String::new);
        rec.check(K::NEpClosure, a, None, String::new);
    }

    let mut bad = Vec::new();
    let mut any = false;
    for (id, eval) in &verdict.verdicts {
        if let (Some(w), true) = (&eval.witness, id.is_existential()) {
            any = true;
            if ep_oracle::recheck_witness(ring, f, *id, w)? != Some(true) {
                bad.push(format!("{id}: {}", ring.render(w)));
            }
        }
    }
    rec.check(K::WitnessValidity, a, any.then_some(bad.is_empty()), || bad.join("; "));
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}; expected text or json"))),
        }
    }
}

pub fn emit_report(r: &TheoremReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(r).expect("reports serialize");
            out.push(b'\n');
            out
        }
        Format::Text => render_text(r).into_bytes(),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<TheoremReport> {
    serde_json::from_slice(bytes).map_err(|e| Error::Parse(format!("report: {e}")))
}

fn render_text(r: &TheoremReport) -> String {
    use std::fmt::Write;
    let mut s = String::new();
    let source = match &r.corpus.source {
        CorpusSource::Exhaustive => "exhaustive".to_string(),
        CorpusSource::Random { seed, count } => format!("random seed={seed} count={count}"),
    };
    let _ = writeln!(
        s,
        "suite {} on {} ({source}, {} elements, {} EP)",
        r.suite, r.corpus.ring, r.corpus.elements, r.ep_elements
    );
    let width = r.characterizations.keys().chain(r.structural.keys()).map(|k| k.len()).max().unwrap_or(0);
    for (title, map) in [("characterizations", &r.characterizations), ("structural checks", &r.structural)] {
        if map.is_empty() {
            continue;
        }
        let _ = writeln!(s, "{title}:");
        for (k, t) in map {
            let _ = writeln!(
                s,
                "  {k:<width$}  agree {:>6}  disagree {:>3}  inapplicable {:>6}  derived {:>6}",
                t.agree, t.disagree, t.inapplicable, t.derived
            );
        }
    }
    let t = &r.totals;
    let _ = writeln!(
        s,
        "totals: agree {} disagree {} inapplicable {} derived {}",
        t.agree, t.disagree, t.inapplicable, t.derived
    );
    for c in &r.counterexamples {
        let _ = writeln!(s, "counterexample: {} at {}: expected {}, got {}", c.check, c.element, c.expected, c.got);
    }
    for o in &r.observations {
        let _ = writeln!(s, "observation {}: {} ({} found)", o.name, o.description, o.count);
        for e in &o.examples {
            let _ = writeln!(s, "  {e}");
        }
    }
    s
}
