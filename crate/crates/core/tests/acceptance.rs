//! Acceptance criteria. Runs as a plain binary so that every criterion prints
//! one PASS/FAIL line; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use epkit::ep_oracle::{self, CharacterizationId, Facts, SolutionFamily};
use epkit::gen_inverse::{self, DecompositionKind, InverseKind};
use epkit::verifier::{self, CorpusSource, Format, Suite, SuiteOptions};
use epkit::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn q(n: usize) -> Ring<RationalMatrices> {
    Ring::new(MatrixRing::new(n, RationalScalars::new(), Involution::Transpose).unwrap())
}

fn gf(p: u64) -> Ring<ModularMatrices> {
    Ring::new(MatrixRing::new(2, Modular::new(p).unwrap(), Involution::Transpose).unwrap())
}

fn zmod(n: u64) -> Ring<ModularIntegers> {
    Ring::new(ModularIntegers::new(n).unwrap())
}

fn random_q3() -> (Ring<RationalMatrices>, Vec<Matrix<Rational>>) {
    let ring = q(3);
    let corpus = verifier::build_corpus(&ring, CorpusSource::Random { seed: 42, count: 100 }).unwrap();
    (ring, corpus.elements)
}

fn golden_example() -> Outcome {
    let ring = q(2);
    let a = ring.from_scalar_rows(&[&[0, 1], &[0, 1]]).unwrap();
    let half = |rows: &[[&str; 2]; 2]| {
        let text = format!("[[{},{}],[{},{}]]", rows[0][0], rows[0][1], rows[1][0], rows[1][1]);
        ring.parse_element(&text).unwrap()
    };
    let group = gen_inverse::group_inverse(&ring, &a).unwrap();
    let core = gen_inverse::core_inverse(&ring, &a).unwrap();
    let ep = ep_oracle::ep_baseline(&ring, &a).unwrap();
    let mut bad = Vec::new();
    if group.as_ref() != Some(&a) {
        bad.push("A^# != [[0,1],[0,1]]");
    }
    let expected_core = half(&[["1/2", "1/2"], ["1/2", "1/2"]]);
    if core.as_ref() != Some(&expected_core) {
        bad.push("core A != [[1/2,1/2],[1/2,1/2]]");
    }
    if ep {
        bad.push("A reported EP");
    }
    let p = ring.complement(&ring.mul(&a, &expected_core));
    if p != half(&[["1/2", "-1/2"], ["-1/2", "1/2"]]) {
        bad.push("p != [[1/2,-1/2],[-1/2,1/2]]");
    }
    if !ring.is_zero(&ring.mul(&p, &a)) {
        bad.push("pA != 0");
    }
    if ring.is_zero(&ring.mul(&a, &p)) {
        bad.push("Ap = 0");
    }
    let f = Facts::new(&ring, &a).unwrap();
    let v8 = ep_oracle::evaluate(&ring, &f, CharacterizationId::CoreConditions(8)).unwrap();
    if v8.witness.as_ref() != Some(&p) || v8.outcome.as_bool() != Some(false) {
        bad.push("core-conditions:8 does not report p");
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() { "p = [[1/2,-1/2],[-1/2,1/2]], pA = 0, Ap != 0".into() } else { bad.join("; ") },
    )
}

fn biconditional_suite<R: StarRing>(ring: &Ring<R>) -> (u64, u64, u64) {
    let corpus = verifier::Corpus {
        ring: ring.descriptor(),
        source: CorpusSource::Exhaustive,
        elements: ring.elements().unwrap().to_vec(),
        structures: Vec::new(),
    };
    let options = SuiteOptions { suite: Suite::Only(CharacterizationId::all(3)), n_max: 3 };
    let r = verifier::run_suite(ring, &corpus, &options).unwrap();
    (r.totals.agree + r.totals.derived, r.totals.disagree, r.corpus.elements as u64)
}

fn exhaustive_biconditionals() -> Outcome {
    let (a2, d2, n2) = biconditional_suite(&gf(2));
    let (a3, d3, n3) = biconditional_suite(&gf(3));
    outcome(
        d2 + d3 == 0 && n2 == 16 && n3 == 81,
        format!("M2(GF2): {n2} elements, {a2} agree, {d2} disagree; M2(GF3): {n3} elements, {a3} agree, {d3} disagree"),
    )
}

fn solution_sets() -> Outcome {
    let ring = gf(2);
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for a in ring.elements().unwrap() {
        let f = Facts::new(&ring, a).unwrap();
        if !f.ep {
            continue;
        }
        for family in SolutionFamily::all() {
            let spec = ep_oracle::solution_set(&ring, &f, family).unwrap();
            let cmp = ep_oracle::compare_solution_set(&ring, &spec).unwrap();
            compared += 1;
            if !cmp.equal() {
                mismatches.push(format!("{family} at {}", ring.render(a)));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{compared} set comparisons, {} mismatches {:?}", mismatches.len(), mismatches),
    )
}

fn singletons() -> Outcome {
    let mut checked = 0;
    let mut violations = Vec::new();
    for r in [gf(2), gf(3)] {
        let rep = ep_oracle::singleton_claims(&r).unwrap();
        checked += rep.claims_checked;
        violations.extend(rep.violations);
    }
    outcome(
        violations.is_empty(),
        format!("{checked} claims on M2(GF2) and M2(GF3), {} violations {violations:?}", violations.len()),
    )
}

fn core_identities<R: StarRing>(ring: &Ring<R>, elements: &[R::Elem], checked: &mut usize, bad: &mut Vec<String>) {
    for a in elements {
        let Some(c) = gen_inverse::core_inverse(ring, a).unwrap() else { continue };
        *checked += 1;
        let a2c = ring.mul3(a, a, &c);
        let mut fail = |what: &str| bad.push(format!("{what} at {}", ring.render(a)));
        if gen_inverse::group_inverse(ring, a).unwrap() != Some(ring.mul3(&c, &c, a)) {
            fail("a^# = (core a)^2 a");
        }
        if gen_inverse::core_inverse(ring, &c).unwrap() != Some(a2c.clone()) {
            fail("core(core a) = a^2 core a");
        }
        if gen_inverse::moore_penrose(ring, &c).unwrap() != Some(a2c.clone()) {
            fail("(core a)† = a^2 core a");
        }
        if gen_inverse::group_inverse(ring, &c).unwrap() != Some(a2c) {
            fail("(core a)^# = a^2 core a");
        }
        if let Some(m) = gen_inverse::moore_penrose(ring, a).unwrap() {
            let expected = ring.mul(&ring.star(&ring.mul(&c, a)), a);
            if gen_inverse::core_inverse(ring, &m).unwrap() != Some(expected) {
                fail("core(a†) = (core a a)* a");
            }
        }
        let ep = ep_oracle::ep_baseline(ring, a).unwrap();
        for kind in [DecompositionKind::Group, DecompositionKind::Core, DecompositionKind::Ep] {
            if kind == DecompositionKind::Ep && !ep {
                continue;
            }
            if !gen_inverse::decomposition(ring, a, kind).unwrap().holds() {
                fail(&format!("{kind:?} decomposition"));
            }
        }
    }
}

fn structural_identities() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let (g2, g3, z6, z12) = (gf(2), gf(3), zmod(6), zmod(12));
    core_identities(&g2, g2.elements().unwrap(), &mut checked, &mut bad);
    core_identities(&g3, g3.elements().unwrap(), &mut checked, &mut bad);
    core_identities(&z6, z6.elements().unwrap(), &mut checked, &mut bad);
    core_identities(&z12, z12.elements().unwrap(), &mut checked, &mut bad);
    outcome(bad.is_empty(), format!("{checked} core-invertible elements, {} violations {bad:?}", bad.len()))
}

fn unit_constructions<R: StarRing>(ring: &Ring<R>, elements: &[R::Elem], checked: &mut usize, bad: &mut Vec<String>) {
    for a in elements {
        let f = Facts::new(ring, a).unwrap();
        if !f.ep {
            continue;
        }
        *checked += 1;
        for target in [InverseKind::Core, InverseKind::MoorePenrose] {
            let uc = ep_oracle::unit_construction(ring, &f, target).unwrap();
            if !uc.holds() {
                bad.push(ring.render(a));
            }
        }
    }
}

fn unit_construction() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    let (g2, g3, z6, z12) = (gf(2), gf(3), zmod(6), zmod(12));
    unit_constructions(&g2, g2.elements().unwrap(), &mut checked, &mut bad);
    unit_constructions(&g3, g3.elements().unwrap(), &mut checked, &mut bad);
    unit_constructions(&z6, z6.elements().unwrap(), &mut checked, &mut bad);
    unit_constructions(&z12, z12.elements().unwrap(), &mut checked, &mut bad);
    let (q3, random) = random_q3();
    unit_constructions(&q3, &random, &mut checked, &mut bad);
    outcome(bad.is_empty(), format!("{checked} EP elements over the default corpora, {} violations {bad:?}", bad.len()))
}

fn unique_solutions<R: StarRing>(ring: &Ring<R>, checked: &mut usize, bad: &mut Vec<String>) {
    for a in ring.elements().unwrap() {
        for kind in [InverseKind::MoorePenrose, InverseKind::Group, InverseKind::Core] {
            *checked += 1;
            let n = gen_inverse::all_solutions(ring, a, kind).unwrap().len();
            if n > 1 {
                bad.push(format!("{} has {n} {kind} inverses", ring.render(a)));
            }
        }
    }
}

fn uniqueness() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    unique_solutions(&gf(2), &mut checked, &mut bad);
    unique_solutions(&gf(3), &mut checked, &mut bad);
    unique_solutions(&zmod(6), &mut checked, &mut bad);
    unique_solutions(&zmod(12), &mut checked, &mut bad);
    let z4 = Ring::new(MatrixRing::new(2, Modular::new(4).unwrap(), Involution::Transpose).unwrap());
    unique_solutions(&z4, &mut checked, &mut bad);
    outcome(
        bad.is_empty(),
        format!("{checked} (element, kind) searches over 5 rings, {} violations {bad:?}", bad.len()),
    )
}

fn random_corpus() -> Outcome {
    let (ring, _) = random_q3();
    let run = || {
        let corpus = verifier::build_corpus(&ring, CorpusSource::Random { seed: 42, count: 100 }).unwrap();
        verifier::run_suite(&ring, &corpus, &SuiteOptions::default()).unwrap()
    };
    let first = run();
    let second = run();
    let bytes = verifier::emit_report(&first, Format::Json);
    let identical = bytes == verifier::emit_report(&second, Format::Json);
    let constructive = [
        "certificates",
        "core-identities",
        "decomposition-group",
        "decomposition-ep",
        "decomposition-core",
        "star-symmetry",
    ];
    let mut failing = Vec::new();
    let mut passed = 0;
    for name in constructive {
        let t = first.structural[name];
        passed += t.agree;
        if t.disagree > 0 {
            failing.push(name);
        }
    }
    outcome(
        identical && failing.is_empty() && first.disagreements() == 0,
        format!(
            "{passed} constructive checks pass, failing {failing:?}, suite disagreements {}, reports byte-identical: {identical}",
            first.disagreements()
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden rank-one example over Q", Duration::from_secs(1), golden_example),
        ("exhaustive biconditionals on M2(GF2) and M2(GF3)", Duration::from_secs(30), exhaustive_biconditionals),
        ("solution-set equalities on M2(GF2)", Duration::from_secs(10), solution_sets),
        ("singleton claims in prime rings", Duration::MAX, singletons),
        ("structural identities on core-invertible elements", Duration::MAX, structural_identities),
        ("unit construction on EP elements", Duration::MAX, unit_construction),
        ("uniqueness by exhaustive search", Duration::MAX, uniqueness),
        ("random M3(Q) corpus, seed 42, 100 matrices", Duration::from_secs(60), random_corpus),
    ];
    let mut failures = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = o.passed && in_time;
        if !pass {
            failures += 1;
        }
        let limit = if *budget == Duration::MAX { String::new() } else { format!(" (limit {}s)", budget.as_secs()) };
        println!(
            "{} criterion {}: {name}: {} [{:.2?}{limit}]",
            if pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            elapsed
        );
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
